//! Closed forms predicted for special shapes of N.

use crate::arith::{factorize, is_prime};

use super::dual::n_q;

/// (p^2 - 1) / 24 for a prime p >= 5.
pub fn kappa_prime_formula(p: u64) -> Option<u64> {
    (p >= 5 && is_prime(p)).then(|| (p * p - 1) / 24)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub shape: &'static str,
    pub predicted: u64,
    pub holds: bool,
}

/// Closed-form predictions that apply to N, each compared with `kappa`.
pub fn conjecture_report(n: u64, kappa: u64) -> Vec<Verdict> {
    let fs = factorize(n);
    let mut out = Vec::new();
    let mut push = |shape, predicted: u64| out.push(Verdict { shape, predicted, holds: predicted == kappa });
    match fs.as_slice() {
        [(p, 1)] if *p >= 5 => push("p", (p * p - 1) / 24),
        [(p, 2)] if *p >= 5 => push("p^2", p * (p - 1) * (p - 2) * (p - 3) / 24),
        [(p, 3)] if *p >= 5 => push("p^3", p * p * (p - 1) * (p - 2) * (p - 3) / 24),
        [(q, 1), (p, 1)] if (*q == 2 || *q == 3) && *p >= 5 => {
            push("qp", n_q(*p, *q).expect("distinct primes") - 1)
        }
        _ => {}
    }
    if n > 1 && fs.iter().all(|&(p, _)| p == 2 || p == 3) {
        push("2^a 3^b", 0);
    }
    out
}
