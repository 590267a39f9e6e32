use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::biseq::BiSeq;
use super::theta::{theta_cap, ThetaTable};
use super::yspace::{tensor_classes, YSpace, YTensorIndexer};
use crate::arith::binomial;
use crate::cyclotomic::{Level, UnityRoot};
use crate::exactlinalg::{Rationals, SparseVec};
use crate::{Error, Result};

/// One term c·⟨x; r⟩ ⊗ rest of D_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTerm {
    pub coeff: BigInt,
    pub x: UnityRoot,
    pub r: u32,
    pub rest: BiSeq,
}

fn sign(e: u32) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// The four groups of D_d on a single bi-sequence. D_1(⟦ε; l⟧) = ⟨ε; l⟩.
pub fn d_terms(lv: &Level, b: &BiSeq) -> Vec<DTerm> {
    let d = b.depth();
    let (e, l) = (&b.eps, &b.ls);
    if d == 1 {
        return vec![DTerm { coeff: BigInt::one(), x: e[0], r: l[0], rest: BiSeq::empty() }];
    }
    let mut out = Vec::new();
    out.push(DTerm {
        coeff: BigInt::one(),
        x: lv.div(e[0], e[1]),
        r: l[0],
        rest: BiSeq { eps: e[1..].to_vec(), ls: l[1..].to_vec() },
    });
    // 0-based i in 1..d-1: cut at ε_i, which merges l_{i-1} and l_i
    for i in 1..d - 1 {
        let x = lv.div(e[i], e[i + 1]);
        for r in l[i]..=l[i - 1] + l[i] {
            let mut rest = b.clone();
            rest.ls[i - 1] = l[i - 1] + l[i] - r;
            rest.eps.remove(i);
            rest.ls.remove(i);
            out.push(DTerm { coeff: sign(r - l[i]) * binomial(r as u64, l[i] as u64), x, r, rest });
        }
    }
    // 0-based i in 0..d-1: remove ε_{i+1}, merging l_i and l_{i+1}
    for i in 0..d - 1 {
        let x = lv.div(e[i + 1], e[i]);
        for r in l[i]..=l[i] + l[i + 1] {
            let mut rest = b.clone();
            rest.ls[i] = l[i] + l[i + 1] - r;
            rest.eps.remove(i + 1);
            rest.ls.remove(i + 1);
            out.push(DTerm { coeff: -(sign(l[i]) * binomial(r as u64, l[i] as u64)), x, r, rest });
        }
    }
    let last = d - 1;
    for r in l[last]..=l[last - 1] + l[last] {
        let mut rest = b.clone();
        rest.eps.pop();
        rest.ls.pop();
        rest.ls[last - 1] = l[last - 1] + l[last] - r;
        out.push(DTerm { coeff: sign(r - l[last]) * binomial(r as u64, l[last] as u64), x: e[last], r, rest });
    }
    out
}

/// Element of Y ⊗ X^{⊗(d-1)}: keys are (l, basis position in Y_{l+1}, rest).
pub type YXElement = BTreeMap<(u32, usize, BiSeq), BigRational>;

/// D_d with the Y factor reduced to the quotient basis.
pub fn d_map(ys: &YSpace, b: &BiSeq) -> YXElement {
    let mut out = YXElement::new();
    for t in d_terms(ys.level(), b) {
        let c = BigRational::from_integer(t.coeff);
        for (j, v) in ys.y_reduce(t.x, t.r).iter() {
            let e = out.entry((t.r, *j, t.rest.clone())).or_insert_with(BigRational::zero);
            *e += &c * v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Formal expansion of D_d^iter: sequences of (x_j, r_j) with integer
/// coefficients, before reduction in Y.
pub fn d_iter_formal(lv: &Level, b: &BiSeq) -> BTreeMap<Vec<(UnityRoot, u32)>, BigInt> {
    let mut acc: BTreeMap<(Vec<(UnityRoot, u32)>, BiSeq), BigInt> = BTreeMap::new();
    acc.insert((Vec::new(), b.clone()), BigInt::one());
    for _ in 0..b.depth() {
        let mut next = BTreeMap::new();
        for ((prefix, rest), c) in acc {
            for t in d_terms(lv, &rest) {
                let mut p = prefix.clone();
                p.push((t.x, t.r));
                *next.entry((p, t.rest)).or_insert_with(BigInt::zero) += &c * &t.coeff;
            }
        }
        next.retain(|_, c: &mut BigInt| !c.is_zero());
        acc = next;
    }
    acc.into_iter().map(|((p, _), c)| (p, c)).filter(|(_, c)| !c.is_zero()).collect()
}

/// D_d^iter(b) in (Y^{⊗d})_k on the basis of `ix`.
pub fn d_iter(ys: &YSpace, ix: &YTensorIndexer, b: &BiSeq) -> Result<SparseVec<BigRational>> {
    if b.depth() != ix.d || b.weight() != ix.k {
        return Err(Error::Invalid(format!(
            "bi-sequence of depth {} and weight {} does not lie in (X^d)_k with d = {}, k = {}",
            b.depth(),
            b.weight(),
            ix.d,
            ix.k
        )));
    }
    let mut pairs = Vec::new();
    for (word, c) in d_iter_formal(ys.level(), b) {
        let ls: Vec<u32> = word.iter().map(|w| w.1).collect();
        let slots: Vec<&SparseVec<BigRational>> = word.iter().map(|&(x, r)| ys.y_reduce(x, r)).collect();
        if slots.iter().any(|s| s.is_zero()) {
            continue;
        }
        tensor_classes(ix, &ls, &slots, &BigRational::from_integer(c), &mut pairs);
    }
    Ok(SparseVec::from_pairs(&Rationals, pairs))
}

pub fn check_in_w(lv: &Level, b: &BiSeq) -> Result<()> {
    lv.special()?;
    match b.eps.iter().find(|e| !lv.is_nu(**e)) {
        Some(e) => Err(Error::OutsideNu(e.0)),
        None => Ok(()),
    }
}

/// E_d = ι ∘ D_d over Q: every term c⟨x; r⟩ ⊗ rest becomes c·rest ⊗ Θ(⟨x; r⟩).
pub fn e_map(lv: &Level, b: &BiSeq) -> Result<BTreeMap<BiSeq, BigRational>> {
    check_in_w(lv, b)?;
    let mut out: BTreeMap<BiSeq, BigRational> = BTreeMap::new();
    for t in d_terms(lv, b) {
        let c = BigRational::from_integer(t.coeff);
        for (e, v) in theta_cap(lv, t.x, t.r)? {
            *out.entry(t.rest.pushed(e, t.r)).or_insert_with(BigRational::zero) += &c * v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub type ModpVec = BTreeMap<BiSeq, u64>;

pub(crate) fn add_modp(out: &mut ModpVec, b: BiSeq, c: u64, p: u64) {
    let c = c % p;
    if c == 0 {
        return;
    }
    let e = out.entry(b.clone()).or_insert(0);
    *e = (*e + c) % p;
    if *e == 0 {
        out.remove(&b);
    }
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let m = c % BigInt::from(p);
    let m = if m < BigInt::zero() { m + BigInt::from(p) } else { m };
    u64::try_from(m).expect("reduced")
}

/// Deletes slot `i` from a bi-sequence.
pub(crate) fn without(b: &BiSeq, eps_i: usize, l_i: usize) -> BiSeq {
    let mut out = b.clone();
    out.eps.remove(eps_i);
    out.ls.remove(l_i);
    out
}

/// The mod-p map on 𝒲^{⊗d}: the two θ-sums over i < d with l_i = 0 and
/// the binomial tail.
pub fn e_map_modp(lv: &Level, table: &ThetaTable, b: &BiSeq) -> Result<ModpVec> {
    check_in_w(lv, b)?;
    let p = table.p;
    let d = b.depth();
    let mut out = ModpVec::new();
    for i in 0..d.saturating_sub(1) {
        if b.ls[i] != 0 {
            continue;
        }
        let left = without(b, i, i);
        for (e, c) in table.theta(lv.div(b.eps[i], b.eps[i + 1])) {
            add_modp(&mut out, left.pushed(*e, 0), *c, p);
        }
        let right = without(b, i + 1, i);
        for (e, c) in table.theta(lv.div(b.eps[i + 1], b.eps[i])) {
            add_modp(&mut out, right.pushed(*e, 0), p - c, p);
        }
    }
    binomial_tail(b, b.ls[d - 1], p, &mut out);
    Ok(out)
}

/// Σ_{r = from}^{l_{d-1}+l_d} (-1)^{r-l_d} C(r, l_d) ⟦..., l_{d-1}+l_d-r, r⟧ mod p.
pub(crate) fn binomial_tail(b: &BiSeq, from: u32, p: u64, out: &mut ModpVec) {
    let d = b.depth();
    if d == 1 {
        if from == b.ls[0] {
            add_modp(out, b.clone(), 1, p);
        }
        return;
    }
    let (lp, ld) = (b.ls[d - 2], b.ls[d - 1]);
    for r in from..=lp + ld {
        let c = sign(r - ld) * binomial(r as u64, ld as u64);
        let mut t = b.clone();
        t.ls[d - 2] = lp + ld - r;
        t.ls[d - 1] = r;
        add_modp(out, t, bigint_mod(&c, p), p);
    }
}

/// Reduces a p-integral rational vector mod p; None if some denominator is
/// divisible by p.
pub fn reduce_modp(v: &BTreeMap<BiSeq, BigRational>, p: u64) -> Option<ModpVec> {
    let mut out = ModpVec::new();
    let pb = BigInt::from(p);
    for (b, c) in v {
        if (c.denom() % &pb).is_zero() {
            return None;
        }
        let den = bigint_mod(c.denom(), p);
        let inv = crate::arith::inv_mod(den, p)?;
        let num = bigint_mod(c.numer(), p);
        add_modp(&mut out, b.clone(), crate::arith::mul_mod(num, inv, p), p);
    }
    Some(out)
}
