use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::biseq::compositions;
use crate::arith::divisors;
use crate::cyclotomic::{Level, UnityRoot};
use crate::exactlinalg::{quotient, Field, QuotientPresentation, Rationals, SparseMat, SparseVec};

/// Relations cutting Y_{l+1} out of X_{l+1} = Q^N (coordinate m is ⟨ζ^m; l⟩):
/// ⟨1;0⟩ = 0, ⟨a;l⟩ = (-1)^l ⟨a^{-1};l⟩, and the distribution relations
/// ⟨a^M;l⟩ = M^l Σ_{b in mu_M} ⟨ab;l⟩ for every divisor M of N.
pub fn y_relations<F: Field>(field: &F, n: u64, l: u32) -> SparseMat<F> {
    let nn = n as usize;
    let mut m = SparseMat::new(field.clone(), nn);
    if l == 0 {
        m.push(SparseVec::unit(field, 0));
    }
    let sign = if l % 2 == 0 { field.one() } else { field.neg(&field.one()) };
    for a in 0..nn {
        let inv = (nn - a) % nn;
        m.push(SparseVec::from_pairs(field, vec![(a, field.one()), (inv, field.neg(&sign))]));
    }
    for dm in divisors(n) {
        if dm == 1 {
            continue;
        }
        let scale = field.from_bigint(&BigInt::from(dm).pow(l));
        let step = (n / dm) as usize;
        for a in 0..nn {
            let am = (a as u128 * dm as u128 % n as u128) as usize;
            if am == 0 && l == 0 {
                continue;
            }
            let mut pairs = vec![(am, field.one())];
            for j in 0..dm as usize {
                pairs.push(((a + j * step) % nn, field.neg(&scale)));
            }
            m.push(SparseVec::from_pairs(field, pairs));
        }
    }
    m.rows.retain(|r| !r.is_zero());
    m
}

/// Y_1, ..., Y_{max_l+1} over Q for one level, each presented as a quotient
/// of X_k with the small exponents kept as basis.
#[derive(Clone, Debug)]
pub struct YSpace {
    level: Level,
    pres: Vec<QuotientPresentation<Rationals>>,
    classes: Vec<Vec<SparseVec<BigRational>>>,
}

impl YSpace {
    pub fn new(level: &Level, max_l: u32) -> Self {
        let n = level.n();
        let mut pres = Vec::new();
        let mut classes = Vec::new();
        for l in 0..=max_l {
            let p = quotient(Rationals, n as usize, y_relations(&Rationals, n, l));
            classes.push((0..n as usize).map(|i| p.reduce(&SparseVec::unit(&Rationals, i))).collect());
            pres.push(p);
        }
        YSpace { level: level.clone(), pres, classes }
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn max_l(&self) -> u32 {
        self.pres.len() as u32 - 1
    }

    pub fn presentation(&self, l: u32) -> &QuotientPresentation<Rationals> {
        &self.pres[l as usize]
    }

    /// dim Y_{l+1}.
    pub fn dim(&self, l: u32) -> usize {
        self.pres[l as usize].dim()
    }

    /// Class of ⟨x; l⟩ on the basis of Y_{l+1}.
    pub fn y_reduce(&self, x: UnityRoot, l: u32) -> &SparseVec<BigRational> {
        &self.classes[l as usize][x.0 as usize]
    }
}

/// Expected dim Y_k for N >= 3.
pub fn expected_dim_y(level: &Level, k: u32) -> usize {
    let half = (level.phi() / 2) as usize;
    if k == 1 {
        half + level.nu_count() as usize - 1
    } else {
        half
    }
}

/// Index for (Y^{⊗d})_k: blocks by composition (l_1, ..., l_d), then
/// row-major over the basis positions of each slot.
#[derive(Clone, Debug)]
pub struct YTensorIndexer {
    pub d: usize,
    pub k: u32,
    comps: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    dims: Vec<Vec<usize>>,
    total: usize,
}

impl YTensorIndexer {
    pub fn new(ys: &YSpace, d: usize, k: u32) -> Self {
        let comps = compositions(k.saturating_sub(d as u32), d);
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        let mut total = 0;
        for c in &comps {
            offsets.push(total);
            let ds: Vec<usize> = c.iter().map(|&l| ys.dim(l)).collect();
            total += ds.iter().product::<usize>();
            dims.push(ds);
        }
        YTensorIndexer { d, k, comps, offsets, dims, total }
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn index(&self, ls: &[u32], positions: &[usize]) -> Option<usize> {
        let c = self.comps.binary_search_by(|x| x.as_slice().cmp(ls)).ok()?;
        let mut r = 0;
        for (p, dm) in positions.iter().zip(&self.dims[c]) {
            r = r * dm + p;
        }
        Some(self.offsets[c] + r)
    }
}

/// Tensor product of per-slot classes, placed by `ix`.
pub fn tensor_classes(
    ix: &YTensorIndexer,
    ls: &[u32],
    slots: &[&SparseVec<BigRational>],
    coeff: &BigRational,
    out: &mut Vec<(usize, BigRational)>,
) {
    let mut partial: Vec<(Vec<usize>, BigRational)> = vec![(Vec::new(), coeff.clone())];
    for s in slots {
        let mut next = Vec::with_capacity(partial.len() * s.nnz());
        for (pos, c) in &partial {
            for (j, v) in s.iter() {
                let mut p = pos.clone();
                p.push(*j);
                next.push((p, c * v));
            }
        }
        partial = next;
    }
    for (pos, c) in partial {
        out.push((ix.index(ls, &pos).expect("weight-compatible slots"), c));
    }
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn one() -> BigRational {
        BigRational::one()
    }
    use crate::cyclotomic::make_level;

    #[test]
    fn dims_small() {
        for n in [5u64, 9, 12] {
            let lv = make_level(n).unwrap();
            let ys = YSpace::new(&lv, 2);
            for k in 1..=3 {
                assert_eq!(ys.dim(k - 1), expected_dim_y(&lv, k), "N={n} k={k}");
            }
        }
    }

    #[test]
    fn one_weight_one_vanishes() {
        let ys = YSpace::new(&make_level(7).unwrap(), 0);
        assert!(ys.y_reduce(UnityRoot(0), 0).is_zero());
    }

    #[test]
    fn one_weight_two_n9() {
        // ⟨1;1⟩ = 3/(1-3) (⟨ζ^3;1⟩ + ⟨ζ^6;1⟩)
        let ys = YSpace::new(&make_level(9).unwrap(), 1);
        let lhs = ys.y_reduce(UnityRoot(0), 1).clone();
        let q = Rationals;
        let rhs = ys
            .y_reduce(UnityRoot(3), 1)
            .add_scaled(&q, ys.y_reduce(UnityRoot(6), 1), &one())
            .scale(&q, &rational(-3, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_index_is_bijective() {
        let ys = YSpace::new(&make_level(9).unwrap(), 2);
        let ix = YTensorIndexer::new(&ys, 2, 4);
        assert_eq!(ix.dim(), 3 * 3 * 3);
        assert_eq!(ix.index(&[0, 2], &[0, 0]), Some(0));
        assert_eq!(ix.index(&[2, 0], &[2, 2]), Some(26));
    }
}
