//! Levels, roots of unity stored as exponents, valuations, the sets nu_N and
//! U(n), and the Galois group G = {a in (Z/N)^x : a = 1 mod q}.

use std::collections::BTreeMap;

use crate::arith::{euler_phi, factorize, gcd, p_adic_order, pow_mod};
use crate::exactlinalg::Field;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpecialForm {
    pub p: u64,
    pub q: u64,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    n: u64,
    factorization: Vec<(u64, u32)>,
    phi: u64,
    nu_count: u32,
    special: Option<SpecialForm>,
}

/// zeta_N^exponent for the fixed primitive root zeta_N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnityRoot(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaloisElement(pub u64);

pub fn make_level(n: u64) -> Result<Level> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let factorization = factorize(n);
    let special = special_form_of(n);
    Ok(Level {
        n,
        phi: euler_phi(n),
        nu_count: factorization.len() as u32,
        factorization,
        special,
    })
}

fn special_form_of(n: u64) -> Option<SpecialForm> {
    for (p, q) in [(2u64, 4u64), (3, 3)] {
        if n % q != 0 {
            continue;
        }
        let mut r = n / q;
        let mut m = 0;
        while r % p == 0 {
            r /= p;
            m += 1;
        }
        if r == 1 {
            return Some(SpecialForm { p, q, m });
        }
    }
    None
}

impl Level {
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }
    pub fn phi(&self) -> u64 {
        self.phi
    }
    pub fn nu_count(&self) -> u32 {
        self.nu_count
    }
    pub fn special_form(&self) -> Option<SpecialForm> {
        self.special
    }

    pub fn special(&self) -> Result<SpecialForm> {
        self.special.ok_or(Error::NotSpecial(self.n))
    }

    pub fn root(&self, e: i64) -> UnityRoot {
        UnityRoot(e.rem_euclid(self.n as i64) as u64)
    }
    pub fn one(&self) -> UnityRoot {
        UnityRoot(0)
    }
    pub fn mul(&self, a: UnityRoot, b: UnityRoot) -> UnityRoot {
        UnityRoot((a.0 + b.0) % self.n)
    }
    pub fn inv(&self, a: UnityRoot) -> UnityRoot {
        UnityRoot((self.n - a.0) % self.n)
    }
    pub fn div(&self, a: UnityRoot, b: UnityRoot) -> UnityRoot {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: UnityRoot, k: i64) -> UnityRoot {
        let k = k.rem_euclid(self.n as i64) as u64;
        UnityRoot(((a.0 as u128 * k as u128) % self.n as u128) as u64)
    }

    /// Whether x lies in mu_order (order must divide N).
    pub fn in_mu(&self, x: UnityRoot, order: u64) -> bool {
        self.n % order == 0 && x.0 % (self.n / order) == 0
    }

    pub fn all_roots(&self) -> impl Iterator<Item = UnityRoot> {
        (0..self.n).map(UnityRoot)
    }

    /// Elements of mu_order in ascending exponent order.
    pub fn mu(&self, order: u64) -> Vec<UnityRoot> {
        let step = self.n / order;
        (0..order).map(|i| UnityRoot(i * step)).collect()
    }

    pub fn valuation(&self, x: UnityRoot) -> Result<u32> {
        let sf = self.special()?;
        if x.0 == 0 {
            return Err(Error::IdentityValuation);
        }
        Ok(p_adic_order(x.0, sf.p))
    }

    pub fn nu_elements(&self) -> Result<Vec<UnityRoot>> {
        let sf = self.special()?;
        Ok((0..self.n / sf.q).map(|i| UnityRoot(1 + i * sf.q)).collect())
    }

    pub fn is_nu(&self, x: UnityRoot) -> bool {
        self.special.is_some_and(|sf| x.0 % sf.q == 1)
    }

    /// U(n) = mu_{p^n} inside mu_N.
    pub fn subgroup_u(&self, n: u32) -> Result<Vec<UnityRoot>> {
        let sf = self.special()?;
        if n > sf.m {
            return Err(Error::SubgroupIndex { n, m: sf.m });
        }
        Ok(self.mu(sf.p.pow(n)))
    }

    /// Lambda_c(x) = {eps in nu_N : eps^(c p^v(x)) = x} for x != 1.
    pub fn lambda_set(&self, c: i8, x: UnityRoot) -> Result<Vec<UnityRoot>> {
        let sf = self.special()?;
        let v = self.valuation(x)?;
        let e = sf.p.pow(v) as i64 * if c >= 0 { 1 } else { -1 };
        Ok(self
            .nu_elements()?
            .into_iter()
            .filter(|&eps| self.pow(eps, e) == x)
            .collect())
    }

    pub fn galois_group(&self) -> Result<Vec<GaloisElement>> {
        let sf = self.special()?;
        Ok((1..=self.n)
            .map(|a| a % self.n)
            .filter(|&a| gcd(a, self.n) == 1 && a % sf.q == 1 % sf.q)
            .map(GaloisElement)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect())
    }

    /// The unique subgroup G(n) of order p^n, found by element orders.
    pub fn galois_subgroup(&self, n: u32) -> Result<Vec<GaloisElement>> {
        let sf = self.special()?;
        if n > sf.m {
            return Err(Error::SubgroupIndex { n, m: sf.m });
        }
        let e = sf.p.pow(n);
        Ok(self
            .galois_group()?
            .into_iter()
            .filter(|g| pow_mod(g.0, e, self.n) == 1 % self.n)
            .collect())
    }

    pub fn act(&self, g: GaloisElement, x: UnityRoot) -> UnityRoot {
        self.pow(x, g.0 as i64)
    }

    pub fn compose(&self, a: GaloisElement, b: GaloisElement) -> GaloisElement {
        GaloisElement(crate::arith::mul_mod(a.0, b.0, self.n))
    }
}

/// Finitely supported element of F[G].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<F: Field> {
    pub field: F,
    pub n: u64,
    pub coeffs: BTreeMap<GaloisElement, F::Elem>,
}

impl<F: Field> GroupAlgebraElement<F> {
    pub fn new(field: F, n: u64, terms: impl IntoIterator<Item = (GaloisElement, F::Elem)>) -> Self {
        let mut out = GroupAlgebraElement { field, n, coeffs: BTreeMap::new() };
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    fn add_term(&mut self, g: GaloisElement, c: F::Elem) {
        let f = self.field.clone();
        let e = self.coeffs.entry(g).or_insert_with(|| f.zero());
        *e = f.add(e, &c);
        if f.is_zero(e) {
            self.coeffs.remove(&g);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = GroupAlgebraElement { field: f.clone(), n: self.n, coeffs: BTreeMap::new() };
        for (g, a) in &self.coeffs {
            for (h, b) in &other.coeffs {
                out.add_term(GaloisElement(crate::arith::mul_mod(g.0, h.0, self.n)), f.mul(a, b));
            }
        }
        out
    }

    pub fn augmentation(&self) -> F::Elem {
        let f = &self.field;
        self.coeffs.values().fold(f.zero(), |acc, c| f.add(&acc, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::PrimeField;

    fn exps(v: &[UnityRoot]) -> Vec<u64> {
        v.iter().map(|x| x.0).collect()
    }

    #[test]
    fn levels() {
        let l9 = make_level(9).unwrap();
        assert_eq!((l9.phi(), l9.nu_count()), (6, 1));
        assert_eq!(l9.special_form(), Some(SpecialForm { p: 3, q: 3, m: 1 }));
        let l12 = make_level(12).unwrap();
        assert_eq!((l12.phi(), l12.nu_count(), l12.special_form()), (4, 2, None));
        let l415 = make_level(415).unwrap();
        assert_eq!((l415.phi(), l415.nu_count()), (328, 2));
        assert_eq!(make_level(0), Err(Error::ZeroLevel));
        assert_eq!(make_level(3).unwrap().special_form(), Some(SpecialForm { p: 3, q: 3, m: 0 }));
        assert_eq!(make_level(4).unwrap().special_form(), Some(SpecialForm { p: 2, q: 4, m: 0 }));
        assert_eq!(make_level(2).unwrap().special_form(), None);
        assert_eq!(make_level(6).unwrap().special_form(), None);
    }

    #[test]
    fn valuations() {
        let l27 = make_level(27).unwrap();
        assert_eq!(l27.valuation(UnityRoot(9)), Ok(2));
        assert_eq!(make_level(9).unwrap().valuation(UnityRoot(3)), Ok(1));
        assert_eq!(make_level(8).unwrap().valuation(UnityRoot(6)), Ok(1));
        assert_eq!(l27.valuation(UnityRoot(0)), Err(Error::IdentityValuation));
        assert!(make_level(12).unwrap().valuation(UnityRoot(1)).is_err());
    }

    #[test]
    fn nu_sets() {
        assert_eq!(exps(&make_level(9).unwrap().nu_elements().unwrap()), vec![1, 4, 7]);
        assert_eq!(exps(&make_level(8).unwrap().nu_elements().unwrap()), vec![1, 5]);
        assert_eq!(exps(&make_level(3).unwrap().nu_elements().unwrap()), vec![1]);
    }

    #[test]
    fn u_subgroups() {
        assert_eq!(exps(&make_level(27).unwrap().subgroup_u(1).unwrap()), vec![0, 9, 18]);
        assert_eq!(exps(&make_level(9).unwrap().subgroup_u(0).unwrap()), vec![0]);
        assert_eq!(exps(&make_level(16).unwrap().subgroup_u(2).unwrap()), vec![0, 4, 8, 12]);
        assert!(make_level(9).unwrap().subgroup_u(2).is_err());
    }

    #[test]
    fn lambda_sets() {
        let l9 = make_level(9).unwrap();
        assert_eq!(exps(&l9.lambda_set(1, UnityRoot(3)).unwrap()), vec![1, 4, 7]);
        assert!(l9.lambda_set(-1, UnityRoot(3)).unwrap().is_empty());
        let l8 = make_level(8).unwrap();
        assert_eq!(exps(&l8.lambda_set(1, UnityRoot(2)).unwrap()), vec![1, 5]);
        assert_eq!(exps(&l9.lambda_set(-1, UnityRoot(2)).unwrap()), vec![7]);
        assert!(l9.lambda_set(1, UnityRoot(0)).is_err());
        // x = -1 at a 2-power level: both signs give the same set
        assert_eq!(l8.lambda_set(1, UnityRoot(4)), l8.lambda_set(-1, UnityRoot(4)));
    }

    #[test]
    fn galois_group_order() {
        for (n, ord) in [(9u64, 3usize), (27, 9), (8, 2), (16, 4), (4, 1), (3, 1)] {
            let l = make_level(n).unwrap();
            assert_eq!(l.galois_group().unwrap().len(), ord);
        }
        let l27 = make_level(27).unwrap();
        assert_eq!(l27.galois_subgroup(1).unwrap().len(), 3);
    }

    #[test]
    fn group_algebra() {
        let f = PrimeField::new(3).unwrap();
        let a = GroupAlgebraElement::new(f, 9, [(GaloisElement(1), 1), (GaloisElement(4), 2)]);
        let b = GroupAlgebraElement::new(f, 9, [(GaloisElement(7), 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.augmentation(), f.mul(&a.augmentation(), &b.augmentation()));
        assert_eq!(ab.coeffs.get(&GaloisElement(7)), Some(&1));
        assert_eq!(ab.coeffs.get(&GaloisElement(1)), Some(&2));
    }
}
