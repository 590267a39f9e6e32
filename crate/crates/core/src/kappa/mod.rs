//! kappa(N): the dimension of the cokernel of D_2^iter from weight-two,
//! depth-two symbols into Y1 ⊗ Y1, together with the weight-two dimension it
//! determines, the dual description for N = qp, and reference values.

mod block;
mod conjecture;
mod dual;
mod group;
mod rational;
mod table;

use std::fmt;
use std::time::Instant;

pub use conjecture::{conjecture_report, kappa_prime_formula, Verdict};
pub use dual::{cosets, dual_kernel_check, lambda_conditions, lower_bound_witnesses, n_q, DualReport, WitnessReport};
pub use group::{DivisorOrbits, UnitGroup};
pub use table::{table1, table1_value};

use crate::arith::euler_phi;
use crate::par::Exec;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaMethod {
    /// Exact rank of the full matrix over Q.
    Rational,
    /// Character blocks, ranks modulo primes with a certified bound.
    ModularVerified,
}

impl fmt::Display for KappaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KappaMethod::Rational => "rational",
            KappaMethod::ModularVerified => "modular-verified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaResult {
    pub n: u64,
    pub kappa: u64,
    pub dim_y1: usize,
    /// N^2 generators of weight two and depth two.
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub elapsed_ms: u128,
    pub method: KappaMethod,
    /// Primes used by the modular method, empty for the rational one.
    pub primes: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct KappaOptions {
    pub force_rational: bool,
    pub exec: Exec,
    pub max_primes: usize,
}

impl Default for KappaOptions {
    fn default() -> Self {
        KappaOptions { force_rational: false, exec: Exec::default(), max_primes: 200 }
    }
}

pub fn kappa(n: u64) -> Result<KappaResult> {
    kappa_with(n, &KappaOptions::default())
}

pub fn kappa_with(n: u64, opts: &KappaOptions) -> Result<KappaResult> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let t = Instant::now();
    let (kappa, dim_y1, rank, method, primes) = if opts.force_rational || n <= 2 {
        let r = rational::kappa_rational(n)?;
        (r.kappa, r.dim_y1, r.rank, KappaMethod::Rational, Vec::new())
    } else {
        let r = block::kappa_blocks(n, opts.exec, opts.max_primes)?;
        (r.kappa, r.dim_y1, r.rank, KappaMethod::ModularVerified, r.primes)
    };
    Ok(KappaResult {
        n,
        kappa: kappa as u64,
        dim_y1,
        domain_dim: (n * n) as usize,
        codomain_dim: dim_y1 * dim_y1,
        rank,
        elapsed_ms: t.elapsed().as_millis(),
        method,
        primes,
    })
}

/// kappa(N) with every root x replaced by x^a before reduction to Y1.
pub fn kappa_twisted(n: u64, a: u64) -> Result<u64> {
    Ok(rational::kappa_twisted(n, a)?.kappa as u64)
}

/// (φ(N)/2 + ν(N) - 1)^2 + φ(N) + ν(N) - κ(N) for N >= 3, with ν(N) the
/// number of distinct prime factors.
pub fn weight2_dimension(n: u64, kappa: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::Invalid(format!("weight-two dimension formula needs N >= 3, got {n}")));
    }
    let phi = euler_phi(n);
    let nu = crate::arith::factorize(n).len() as u64;
    let a = phi / 2 + nu - 1;
    (a * a + phi + nu)
        .checked_sub(kappa)
        .ok_or_else(|| Error::Invalid(format!("kappa = {kappa} exceeds the ambient count for N = {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(n: u64) -> (u64, u64) {
        let b = kappa(n).unwrap();
        let r = kappa_with(n, &KappaOptions { force_rational: true, ..Default::default() }).unwrap();
        assert_eq!(b.dim_y1, r.dim_y1, "N={n}");
        (b.kappa, r.kappa)
    }

    #[test]
    fn blocks_agree_with_rational() {
        for n in 1..=24 {
            let (b, r) = both(n);
            assert_eq!(b, r, "N={n}");
        }
    }

    #[test]
    fn table_spot_values() {
        for n in [25u64, 36, 49, 55, 60] {
            assert_eq!(kappa(n).unwrap().kappa, table1_value(n).unwrap(), "N={n}");
        }
    }

    #[test]
    fn primes_match_formula() {
        for p in [5u64, 7, 11, 13, 29, 37] {
            assert_eq!(Some(kappa(p).unwrap().kappa), kappa_prime_formula(p), "p={p}");
        }
    }

    #[test]
    fn weight2_examples() {
        assert_eq!(weight2_dimension(6, kappa(6).unwrap().kappa).unwrap(), 8);
        assert_eq!(weight2_dimension(25, kappa(25).unwrap().kappa).unwrap(), 116);
        assert_eq!(weight2_dimension(5, kappa(5).unwrap().kappa).unwrap(), 8);
    }
}

#[cfg(test)]
mod twist_tests {
    use super::*;
    use crate::arith::gcd;

    #[test]
    fn galois_twist_invariant() {
        for n in [5u64, 8, 9, 12, 15] {
            let base = kappa(n).unwrap().kappa;
            for a in (2..n).filter(|&a| gcd(a, n) == 1) {
                assert_eq!(kappa_twisted(n, a).unwrap(), base, "N={n} a={a}");
            }
        }
    }
}
