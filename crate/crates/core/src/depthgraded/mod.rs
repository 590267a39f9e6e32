//! The spaces X, Y, W and the maps D_d, D_d^iter, E_d, ℰ_d between their
//! tensor powers, with the checkers built on them.

mod biseq;
mod checks;
mod maps;
mod ops;
mod theta;
mod yspace;

pub use biseq::{compositions, Alphabet, BiSeq, XSpaceIndexer};
pub use checks::{
    basis_bijectivity_check, basis_symbol, decomposition_check, galois_equivariance_check, modp_reduction_check,
    surjectivity_check, theta_sum_check, unipotence_check, BasisReport, SurjectivityReport, UnipotenceReport,
};
pub use maps::{d_iter, d_iter_formal, d_map, d_terms, e_map, e_map_modp, reduce_modp, DTerm, ModpVec, YXElement};
pub use ops::ModpModel;
pub use theta::{theta_cap, theta_small, theta_tilde, ThetaTable};
pub use yspace::{expected_dim_y, tensor_classes, y_relations, YSpace, YTensorIndexer};
