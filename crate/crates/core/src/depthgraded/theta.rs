use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::cyclotomic::{Level, UnityRoot};
use crate::{Error, Result};

/// Θ(⟨x; l⟩) in W_{l+1}: coefficients on ⟦ε; l⟧ for ε in nu_N.
pub fn theta_cap(lv: &Level, x: UnityRoot, l: u32) -> Result<Vec<(UnityRoot, BigRational)>> {
    let sf = lv.special()?;
    let mut out: BTreeMap<UnityRoot, BigRational> = BTreeMap::new();
    if x.0 == 0 {
        if l == 0 {
            return Ok(Vec::new());
        }
        let n = BigInt::from(lv.n());
        let num = n.clone().pow(l) + (-n).pow(l);
        let den = BigInt::from(1) - BigInt::from(sf.p).pow(l);
        let c = BigRational::new(num, den);
        if c.is_zero() {
            return Ok(Vec::new());
        }
        return Ok(lv.nu_elements()?.into_iter().map(|e| (e, c.clone())).collect());
    }
    let v = lv.valuation(x)?;
    let pv = BigInt::from(sf.p).pow(v * l);
    for c in [1i8, -1] {
        let sign = if c < 0 && l % 2 == 1 { -1 } else { 1 };
        for e in lv.lambda_set(c, x)? {
            *out.entry(e).or_insert_with(BigRational::zero) += BigRational::from_integer(&pv * sign);
        }
    }
    Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn check_small(lv: &Level, x: UnityRoot) -> Result<(u64, u64)> {
    let sf = lv.special()?;
    let order = lv.n() / sf.q;
    if !lv.in_mu(x, order) {
        return Err(Error::NotInSubgroup { exp: x.0, order, n: lv.n() });
    }
    Ok((sf.p, order))
}

/// θ(x) in the mod-p space W_1 for x in mu_{N/q}; θ(1) = 0.
pub fn theta_small(lv: &Level, x: UnityRoot) -> Result<Vec<(UnityRoot, u64)>> {
    let (p, _) = check_small(lv, x)?;
    if x.0 == 0 {
        return Ok(Vec::new());
    }
    let mut out: BTreeMap<UnityRoot, u64> = BTreeMap::new();
    for c in [1i8, -1] {
        for e in lv.lambda_set(c, x)? {
            let s = out.entry(e).or_insert(0);
            *s = (*s + 1) % p;
        }
    }
    Ok(out.into_iter().filter(|(_, c)| *c != 0).collect())
}

/// θ̃(x) = θ(x) for x != 1 and θ̃(1) = -Σ_{y in mu_{N/q}} θ(y).
pub fn theta_tilde(lv: &Level, x: UnityRoot) -> Result<Vec<(UnityRoot, u64)>> {
    let (p, order) = check_small(lv, x)?;
    if x.0 != 0 {
        return theta_small(lv, x);
    }
    let mut out: BTreeMap<UnityRoot, u64> = BTreeMap::new();
    for y in lv.mu(order) {
        for (e, c) in theta_small(lv, y)? {
            let s = out.entry(e).or_insert(0);
            *s = (*s + p - c) % p;
        }
    }
    Ok(out.into_iter().filter(|(_, c)| *c != 0).collect())
}

/// θ and θ̃ tabulated on mu_{N/q}, indexed by exponent / q.
#[derive(Clone, Debug)]
pub struct ThetaTable {
    pub p: u64,
    pub q: u64,
    theta: Vec<Vec<(UnityRoot, u64)>>,
    tilde: Vec<Vec<(UnityRoot, u64)>>,
}

impl ThetaTable {
    pub fn new(lv: &Level) -> Result<Self> {
        let sf = lv.special()?;
        let order = lv.n() / sf.q;
        let theta: Vec<_> = lv.mu(order).into_iter().map(|y| theta_small(lv, y)).collect::<Result<_>>()?;
        let mut tilde = theta.clone();
        tilde[0] = theta_tilde(lv, UnityRoot(0))?;
        Ok(ThetaTable { p: sf.p, q: sf.q, theta, tilde })
    }

    pub fn theta(&self, x: UnityRoot) -> &[(UnityRoot, u64)] {
        &self.theta[(x.0 / self.q) as usize]
    }

    pub fn tilde(&self, x: UnityRoot) -> &[(UnityRoot, u64)] {
        &self.tilde[(x.0 / self.q) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_level;
    use crate::depthgraded::yspace::rational;

    fn ex(v: &[(UnityRoot, u64)]) -> Vec<(u64, u64)> {
        v.iter().map(|(e, c)| (e.0, *c)).collect()
    }

    #[test]
    fn theta_cap_values() {
        let l9 = make_level(9).unwrap();
        assert!(theta_cap(&l9, UnityRoot(0), 0).unwrap().is_empty());
        let t = theta_cap(&l9, UnityRoot(3), 0).unwrap();
        assert_eq!(t.iter().map(|(e, _)| e.0).collect::<Vec<_>>(), vec![1, 4, 7]);
        let t = theta_cap(&l9, UnityRoot(0), 2).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|(_, c)| *c == rational(-81, 4)));
    }

    #[test]
    fn theta_small_values() {
        let l9 = make_level(9).unwrap();
        assert!(theta_small(&l9, UnityRoot(0)).unwrap().is_empty());
        assert_eq!(ex(&theta_small(&l9, UnityRoot(3)).unwrap()), vec![(1, 1), (4, 1), (7, 1)]);
        assert!(theta_small(&make_level(8).unwrap(), UnityRoot(4)).unwrap().is_empty());
        assert!(theta_small(&l9, UnityRoot(1)).is_err());
    }

    #[test]
    fn theta_tilde_values() {
        assert!(theta_tilde(&make_level(8).unwrap(), UnityRoot(0)).unwrap().is_empty());
        let l9 = make_level(9).unwrap();
        assert_eq!(ex(&theta_tilde(&l9, UnityRoot(0)).unwrap()), vec![(1, 1), (4, 1), (7, 1)]);
        assert_eq!(theta_tilde(&l9, UnityRoot(6)).unwrap(), theta_small(&l9, UnityRoot(6)).unwrap());
        // M = 2: θ̃(1) = 2 Σ_{ν_27}
        let l27 = make_level(27).unwrap();
        let t = theta_tilde(&l27, UnityRoot(0)).unwrap();
        assert_eq!(t.len(), 9);
        assert!(t.iter().all(|(_, c)| *c == 2));
    }
}
