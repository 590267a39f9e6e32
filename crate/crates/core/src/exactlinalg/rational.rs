//! Exact rank over Q.
//!
//! The fast path computes the rank modulo two primes above 2^20. When they
//! agree on r, r is a lower bound for the rational rank; the upper bound is
//! certified by lifting the modular null space to Q (CRT and rational
//! reconstruction) and checking every lifted vector against the integer
//! matrix exactly. Anything that does not certify falls back to
//! fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elim::{rank_fraction_free, rank_mod_int, remove_content};
use super::field::{Field, PrimeField, Rationals};
use super::rref::Rref;
use super::sparse::{SparseMat, SparseVec};
use crate::arith::{primes_congruent_one, rational_reconstruct};

#[derive(Clone, Debug)]
pub struct RankOptions {
    /// Skip the modular fast path entirely.
    pub force_fraction_free: bool,
    /// Primes dividing this value are never used by the fast path.
    pub avoid: u64,
    /// Extra primes tried for null-space reconstruction before giving up.
    pub max_lift_primes: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { force_fraction_free: false, avoid: 1, max_lift_primes: 6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    FractionFree,
    ModularCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub method: RankMethod,
    pub primes: Vec<u64>,
}

/// Scales each row to a primitive integer vector.
pub fn integer_rows(m: &SparseMat<Rationals>) -> Vec<SparseVec<BigInt>> {
    m.rows.iter().map(integer_row).collect()
}

pub fn integer_row(r: &SparseVec<BigRational>) -> SparseVec<BigInt> {
    let l = r
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut e: Vec<(usize, BigInt)> = r
        .iter()
        .map(|(i, v)| (*i, v.numer() * (&l / v.denom())))
        .collect();
    remove_content(&mut e);
    SparseVec::from_sorted_unchecked(e)
}

pub fn fast_path_primes(avoid: u64) -> impl Iterator<Item = u64> {
    primes_congruent_one(1 << 20, 2, avoid)
}

pub fn rank_rational(m: &SparseMat<Rationals>, opts: &RankOptions) -> RankReport {
    let rows = integer_rows(m);
    rank_integer(&rows, m.ncols, opts)
}

pub fn rank_integer(rows: &[SparseVec<BigInt>], ncols: usize, opts: &RankOptions) -> RankReport {
    if !opts.force_fraction_free {
        if let Some(rep) = modular_certified(rows, ncols, opts) {
            return rep;
        }
    }
    RankReport {
        rank: rank_fraction_free(rows.to_vec(), ncols),
        method: RankMethod::FractionFree,
        primes: Vec::new(),
    }
}

fn modular_certified(rows: &[SparseVec<BigInt>], ncols: usize, opts: &RankOptions) -> Option<RankReport> {
    let mut primes = fast_path_primes(opts.avoid);
    let p1 = primes.next()?;
    let p2 = primes.next()?;
    let r1 = rank_mod_int(rows, ncols, p1);
    let r2 = rank_mod_int(rows, ncols, p2);
    if r1 != r2 {
        return None;
    }
    let r = r1;
    let done = |primes: Vec<u64>| Some(RankReport { rank: r, method: RankMethod::ModularCertified, primes });
    if r == ncols || r == rows.len() {
        return done(vec![p1, p2]);
    }
    // Upper bound: lift the canonical modular kernel to Q.
    let mut used = vec![p1, p2];
    let mut kernels: Vec<Vec<SparseVec<u64>>> = Vec::new();
    let mut free_cols: Option<Vec<usize>> = None;
    for &p in &[p1, p2] {
        let (free, ker) = modular_kernel(rows, ncols, p);
        if free.len() != ncols - r || free_cols.as_ref().is_some_and(|f| *f != free) {
            return None;
        }
        free_cols = Some(free);
        kernels.push(ker);
    }
    let mut extra = 0;
    loop {
        if let Some(lifted) = lift_kernel(&kernels, &used) {
            if lifted.iter().all(|v| annihilates(rows, v)) {
                return done(used);
            }
        }
        if extra >= opts.max_lift_primes {
            return None;
        }
        let p = primes.next()?;
        let (free, ker) = modular_kernel(rows, ncols, p);
        if Some(&free) != free_cols.as_ref() {
            return None;
        }
        kernels.push(ker);
        used.push(p);
        extra += 1;
    }
}

fn modular_kernel(rows: &[SparseVec<BigInt>], ncols: usize, p: u64) -> (Vec<usize>, Vec<SparseVec<u64>>) {
    let f = PrimeField::new(p).expect("prime");
    let mut rr = Rref::new(f, ncols);
    for r in rows {
        let v = SparseVec::from_pairs(&f, r.iter().map(|(i, x)| (*i, f.from_bigint(x))).collect());
        rr.insert(&v);
    }
    (rr.free_columns(), rr.kernel())
}

fn lift_kernel(kernels: &[Vec<SparseVec<u64>>], primes: &[u64]) -> Option<Vec<SparseVec<BigInt>>> {
    let modulus: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let nvec = kernels[0].len();
    let mut out = Vec::with_capacity(nvec);
    for k in 0..nvec {
        let mut idx: Vec<usize> = kernels.iter().flat_map(|ks| ks[k].iter().map(|e| e.0)).collect();
        idx.sort_unstable();
        idx.dedup();
        let mut entries = Vec::with_capacity(idx.len());
        let mut den = BigInt::one();
        for &i in &idx {
            let mut acc = BigInt::zero();
            let mut m = BigInt::one();
            for (ks, &p) in kernels.iter().zip(primes) {
                let pb = BigInt::from(p);
                let x = BigInt::from(*ks[k].get(i).unwrap_or(&0));
                // acc <- acc + m * ((x - acc) * m^{-1} mod p)
                let minv = m.extended_gcd(&pb).x.mod_floor(&pb);
                let t = ((&x - &acc) * minv).mod_floor(&pb);
                acc += &m * t;
                m *= pb;
            }
            let (n, d) = rational_reconstruct(&acc, &modulus)?;
            den = den.lcm(&d);
            entries.push((i, BigRational::new(n, d)));
        }
        let ints: Vec<(usize, BigInt)> = entries
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, (v * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        out.push(SparseVec::from_sorted_unchecked(ints));
    }
    Some(out)
}

fn annihilates(rows: &[SparseVec<BigInt>], v: &SparseVec<BigInt>) -> bool {
    rows.iter().all(|r| {
        let mut acc = BigInt::zero();
        let (a, b) = (r.entries(), v.entries());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportional_rows() {
        let m = SparseMat::from_dense_i64(Rationals, &[vec![1, 2], vec![2, 4]]);
        let rep = rank_rational(&m, &RankOptions::default());
        assert_eq!(rep.rank, 1);
        assert_eq!(rep.method, RankMethod::ModularCertified);
        let ff = rank_rational(&m, &RankOptions { force_fraction_free: true, ..Default::default() });
        assert_eq!(ff.rank, 1);
        assert_eq!(ff.method, RankMethod::FractionFree);
    }

    #[test]
    fn fast_path_primes_are_above_two_to_twenty() {
        let ps: Vec<u64> = fast_path_primes(1).take(2).collect();
        assert_eq!(ps, vec![1048583, 1048589]);
    }

    #[test]
    fn rank_detects_large_prime_coincidence() {
        // det = 1048583 * 1048589: singular modulo both fast-path primes
        let p = 1048583i64 * 1048589;
        let m = SparseMat::from_dense_i64(Rationals, &[vec![1, 0], vec![0, p]]);
        let rep = rank_rational(&m, &RankOptions::default());
        assert_eq!(rep.rank, 2);
    }
}
