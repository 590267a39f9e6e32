//! Exact sparse linear algebra over Q and prime fields.

mod dense;
mod elim;
mod field;
mod nilpotent;
mod rational;
mod rref;
mod sparse;

pub use dense::{dense_rank_mod, EchelonMod};
pub use elim::rank_mod_int;
pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use nilpotent::{nilpotency_index, Nilpotency};
pub use rational::{
    fast_path_primes, integer_row, integer_rows, rank_integer, rank_rational, RankMethod, RankOptions,
    RankReport,
};
pub use rref::{kernel_basis, quotient, QuotientPresentation, Rref};
pub use sparse::{SparseMat, SparseVec};

/// Exact rank over the matrix's field.
pub fn rank<F: Field>(m: &SparseMat<F>) -> usize {
    F::rank_of(m)
}

/// Dimension of the cokernel when the rows span the image.
pub fn cokernel_dim<F: Field>(m: &SparseMat<F>) -> usize {
    m.ncols - rank(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_collapse() {
        let rows = [vec![1, 1], vec![1, -1]];
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(rank(&SparseMat::from_dense_i64(f2, &rows)), 1);
        assert_eq!(rank(&SparseMat::from_dense_i64(Rationals, &rows)), 2);
    }

    #[test]
    fn cokernels() {
        let z = SparseMat::new(Rationals, 4);
        assert_eq!(cokernel_dim(&z), 4);
        assert_eq!(cokernel_dim(&SparseMat::identity(Rationals, 3)), 0);
    }
}
