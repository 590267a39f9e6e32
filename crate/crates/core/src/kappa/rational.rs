//! Direct computation over Q: every generator ⟦ζ^i, ζ^j; 0, 0⟧ pushed through
//! D_2^iter into Y1 ⊗ Y1, followed by an exact rank.

use num_rational::BigRational;

use crate::arith::gcd;
use crate::cyclotomic::{make_level, UnityRoot};
use crate::depthgraded::{d_iter, d_iter_formal, tensor_classes, BiSeq, YSpace, YTensorIndexer};
use crate::exactlinalg::{rank_rational, RankOptions, Rationals, SparseMat, SparseVec};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RationalOutcome {
    pub kappa: usize,
    pub dim_y1: usize,
    pub rank: usize,
}

fn finish(ix_dim: usize, dim_y1: usize, mut m: SparseMat<Rationals>) -> RationalOutcome {
    m.rows.retain(|r| !r.is_zero());
    m.dedup_rows();
    let rank = rank_rational(&m, &RankOptions::default()).rank;
    RationalOutcome { kappa: ix_dim - rank, dim_y1, rank }
}

pub(crate) fn kappa_rational(n: u64) -> Result<RationalOutcome> {
    kappa_twisted(n, 1)
}

/// Same computation with every root x replaced by x^a before reduction to Y.
/// For a prime to N the answer must not change.
pub(crate) fn kappa_twisted(n: u64, a: u64) -> Result<RationalOutcome> {
    let lv = make_level(n)?;
    if gcd(a % n.max(1), n) != 1 && n > 1 {
        return Err(Error::Invalid(format!("twist {a} is not a unit modulo {n}")));
    }
    let ys = YSpace::new(&lv, 0);
    let ix = YTensorIndexer::new(&ys, 2, 2);
    let mut m = SparseMat::new(Rationals, ix.dim());
    for i in 0..n {
        for j in 0..n {
            let b = BiSeq::new(vec![UnityRoot(i), UnityRoot(j)], vec![0, 0])?;
            if a % n.max(1) == 1 % n.max(1) {
                m.push(d_iter(&ys, &ix, &b)?);
                continue;
            }
            let mut pairs = Vec::new();
            for (word, c) in d_iter_formal(&lv, &b) {
                let ls: Vec<u32> = word.iter().map(|w| w.1).collect();
                let slots: Vec<&SparseVec<BigRational>> =
                    word.iter().map(|&(x, r)| ys.y_reduce(lv.pow(x, a as i64), r)).collect();
                if slots.iter().any(|s| s.is_zero()) {
                    continue;
                }
                tensor_classes(&ix, &ls, &slots, &BigRational::from_integer(c), &mut pairs);
            }
            m.push(SparseVec::from_pairs(&Rationals, pairs));
        }
    }
    Ok(finish(ix.dim(), ys.dim(0), m))
}
