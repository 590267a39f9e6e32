//! The dual side for N = qp: the space Λ_N of coefficient vectors killed by
//! the weight-one relations, the map β on Λ_N ⊗ Λ_N whose kernel has
//! dimension kappa(N), and the explicit kernel elements built from cosets of
//! ⟨q, -1⟩ in (Z/p)^x.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::is_prime;
use crate::exactlinalg::{kernel_basis, rank_rational, Field, RankOptions, Rationals, SparseMat, SparseVec};
use crate::{Error, Result};

/// Linear conditions cutting Λ_N out of Q^N, one row per condition.
pub fn lambda_conditions(p: u64, q: u64) -> Result<SparseMat<Rationals>> {
    check_pair(p, q)?;
    let n = (p * q) as usize;
    let (pu, qu) = (p as usize, q as usize);
    let f = Rationals;
    let one = || BigRational::one();
    let neg = || -BigRational::one();
    let mut m = SparseMat::new(f, n);
    m.push(SparseVec::unit(&f, 0));
    for i in 1..n {
        m.push(SparseVec::from_pairs(&f, vec![(i, one()), (n - i, neg())]));
    }
    for mm in 1..pu {
        let mut pairs = vec![(mm * qu % n, one())];
        pairs.extend((0..qu).map(|i| ((mm + i * pu) % n, neg())));
        m.push(SparseVec::from_pairs(&f, pairs));
    }
    for nn in 1..qu {
        let mut pairs = vec![(nn * pu % n, one())];
        pairs.extend((0..pu).map(|i| ((nn + i * qu) % n, neg())));
        m.push(SparseVec::from_pairs(&f, pairs));
    }
    m.rows.retain(|r| !r.is_zero());
    Ok(m)
}

fn check_pair(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::Invalid(format!("need two distinct primes, got p = {p}, q = {q}")));
    }
    Ok(())
}

fn in_lambda(cond: &SparseMat<Rationals>, v: &[BigRational]) -> bool {
    cond.rows.iter().all(|r| r.iter().fold(BigRational::zero(), |acc, (i, c)| acc + c * &v[*i]).is_zero())
}

/// β(C)[u][v] = C[u-v][v] - C[v-u][u] + C[v][u] for C an N x N array.
fn beta_entry<T>(c: &[T], n: usize, u: usize, v: usize, f: impl Fn(&T) -> i64) -> i64 {
    let at = |x: usize, y: usize| f(&c[x * n + y]);
    at((u + n - v) % n, v) - at((v + n - u) % n, u) + at(v, u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub dim_lambda: usize,
    pub dim_y1: usize,
    pub kernel_dim: usize,
    pub kappa: u64,
}

impl DualReport {
    pub fn agrees(&self) -> bool {
        self.dim_lambda == self.dim_y1 && self.kernel_dim as u64 == self.kappa
    }
}

/// dim ker(β) on Λ_N ⊗ Λ_N, computed on a basis of Λ_N.
pub fn dual_kernel_check(p: u64, q: u64) -> Result<DualReport> {
    let cond = lambda_conditions(p, q)?;
    let n = (p * q) as usize;
    let basis = kernel_basis(&cond);
    let dim = basis.len();
    let dense: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|b| {
            let mut v = vec![BigRational::zero(); n];
            for (i, c) in b.iter() {
                v[*i] = c.clone();
            }
            v
        })
        .collect();
    let f = Rationals;
    let mut m = SparseMat::new(f, dim * dim);
    for u in 0..n {
        for v in 0..n {
            let (a, b) = ((u + n - v) % n, (v + n - u) % n);
            let mut pairs = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    let x = &dense[i][a] * &dense[j][v] - &dense[i][b] * &dense[j][u] + &dense[i][v] * &dense[j][u];
                    if !x.is_zero() {
                        pairs.push((i * dim + j, x));
                    }
                }
            }
            m.push(SparseVec::from_pairs(&f, pairs));
        }
    }
    m.rows.retain(|r| !r.is_zero());
    m.dedup_rows();
    let rank = rank_rational(&m, &RankOptions::default()).rank;
    let y = crate::depthgraded::y_relations(&f, p * q, 0);
    let dim_y1 = n - rank_rational(&y, &RankOptions::default()).rank;
    let kappa = super::kappa(p * q)?.kappa;
    Ok(DualReport { p, q, n: p * q, dim_lambda: dim, dim_y1, kernel_dim: dim * dim - rank, kappa })
}

/// Number of cosets of ⟨q, -1⟩ in (Z/p)^x.
pub fn n_q(p: u64, q: u64) -> Result<u64> {
    Ok((p - 1) / coset_subgroup(p, q)?.len() as u64)
}

fn coset_subgroup(p: u64, q: u64) -> Result<Vec<u64>> {
    check_pair(p, q)?;
    let mut h = vec![1u64];
    let mut i = 0;
    while i < h.len() {
        for g in [q % p, p - 1] {
            let y = h[i] * g % p;
            if !h.contains(&y) {
                h.push(y);
            }
        }
        i += 1;
    }
    h.sort_unstable();
    Ok(h)
}

/// Cosets of H = ⟨q, -1⟩ ordered by their least element; the first is H.
pub fn cosets(p: u64, q: u64) -> Result<Vec<Vec<u64>>> {
    let h = coset_subgroup(p, q)?;
    let mut seen = vec![false; p as usize];
    let mut out = Vec::new();
    for x in 1..p {
        if seen[x as usize] {
            continue;
        }
        let mut c: Vec<u64> = h.iter().map(|y| x * y % p).collect();
        c.sort_unstable();
        for &y in &c {
            seen[y as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub p: u64,
    pub q: u64,
    pub subgroup_order: usize,
    pub n_q: u64,
    /// One entry per coset other than H.
    pub count: usize,
    pub slices_in_lambda: bool,
    pub in_kernel: bool,
    pub projection_matches: bool,
    pub independent: bool,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.slices_in_lambda && self.in_kernel && self.projection_matches && self.independent
    }
}

/// Builds g(Γ) = Σ_{x∈Γ} Σ_{y∈(Z/p)^x} ([qx]⊗[qy] - [qy]⊗[qx]) for every
/// coset Γ ≠ H and checks it is a kernel element of β in Λ_N ⊗ Λ_N.
pub fn lower_bound_witnesses(p: u64, q: u64) -> Result<WitnessReport> {
    let cond = lambda_conditions(p, q)?;
    let cs = cosets(p, q)?;
    let h = cs[0].clone();
    let n = (p * q) as usize;
    let units: Vec<u64> = (1..p).collect();
    let mut slices_ok = true;
    let mut kernel_ok = true;
    let mut proj_ok = true;
    let mut projections = Vec::new();
    for gamma in &cs[1..] {
        let mut c = vec![0i64; n * n];
        for &x in gamma {
            for &y in &units {
                let (a, b) = ((q * x) as usize % n, (q * y) as usize % n);
                c[a * n + b] += 1;
                c[b * n + a] -= 1;
            }
        }
        for i in 0..n {
            let row: Vec<BigRational> = (0..n).map(|j| BigRational::from_integer(c[i * n + j].into())).collect();
            let col: Vec<BigRational> = (0..n).map(|j| BigRational::from_integer(c[j * n + i].into())).collect();
            slices_ok &= in_lambda(&cond, &row) && in_lambda(&cond, &col);
        }
        kernel_ok &= (0..n).all(|u| (0..n).all(|v| beta_entry(&c, n, u, v, |x| *x) == 0));
        let mut pr = vec![0i64; n];
        for &y in &h {
            let col = (q * y) as usize % n;
            for (i, e) in pr.iter_mut().enumerate() {
                *e += c[i * n + col];
            }
        }
        let mut want = vec![0i64; n];
        for &x in gamma {
            want[(q * x) as usize % n] += h.len() as i64;
        }
        proj_ok &= pr == want;
        projections.push(pr);
    }
    let f = Rationals;
    let rows: Vec<SparseVec<BigRational>> = projections
        .iter()
        .map(|v| {
            let pairs = v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, f.from_i64(*x))).collect();
            SparseVec::from_pairs(&f, pairs)
        })
        .collect();
    let count = rows.len();
    let independent = rank_rational(&SparseMat::from_rows(f, n, rows), &RankOptions::default()).rank == count;
    Ok(WitnessReport {
        p,
        q,
        subgroup_order: h.len(),
        n_q: cs.len() as u64,
        count,
        slices_in_lambda: slices_ok,
        in_kernel: kernel_ok,
        projection_matches: proj_ok,
        independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        assert_eq!(n_q(17, 2).unwrap(), 2);
        assert_eq!(n_q(13, 3).unwrap(), 2);
        assert_eq!(n_q(17, 3).unwrap(), 1);
        assert!(n_q(5, 5).is_err());
        assert!(n_q(9, 2).is_err());
    }

    #[test]
    fn kernel_examples() {
        for (p, q, k) in [(2u64, 17u64, 1usize), (3, 13, 1), (5, 7, 0)] {
            let r = dual_kernel_check(p, q).unwrap();
            assert_eq!(r.kernel_dim, k, "({p},{q})");
            assert!(r.agrees());
        }
    }

    #[test]
    fn witness_examples() {
        let w = lower_bound_witnesses(17, 2).unwrap();
        assert!(w.ok());
        assert_eq!(w.count, 1);
        assert_eq!(lower_bound_witnesses(13, 3).unwrap().count, 1);
        assert_eq!(lower_bound_witnesses(17, 3).unwrap().count, 0);
    }

    #[test]
    fn lambda_matches_quotient() {
        for (p, q) in [(5u64, 2u64), (7, 3), (11, 5)] {
            let a = kernel_basis(&lambda_conditions(p, q).unwrap()).len();
            let y = crate::depthgraded::y_relations(&Rationals, p * q, 0);
            assert_eq!(a, (p * q) as usize - rank_rational(&y, &RankOptions::default()).rank);
        }
    }
}
