//! Formal iterated-integral words I(a_0; a_1, ..., a_k; a_{k+1}) over the
//! alphabet {0} ∪ mu_N and the Goncharov coproduct on them.
//!
//! Only two normal-form rules are applied: a word with empty middle is the
//! unit, and a word whose nonempty middle is all zeros vanishes. Nothing
//! else (shuffle, path composition) is used.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::binomial;
use crate::cyclotomic::{Level, UnityRoot};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Zero,
    Root(UnityRoot),
}

impl Letter {
    pub fn is_zero(self) -> bool {
        self == Letter::Zero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IIWord {
    pub a0: Letter,
    pub middle: Vec<Letter>,
    pub end: Letter,
}

impl IIWord {
    pub fn new(a0: Letter, middle: Vec<Letter>, end: Letter) -> Self {
        IIWord { a0, middle, end }
    }
    pub fn weight(&self) -> usize {
        self.middle.len()
    }
    pub fn depth(&self) -> usize {
        self.middle.iter().filter(|l| !l.is_zero()).count()
    }
    pub fn is_unit(&self) -> bool {
        self.middle.is_empty()
    }
    pub fn vanishes(&self) -> bool {
        !self.middle.is_empty() && self.depth() == 0
    }
}

impl Ord for IIWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.a0, &self.middle, self.end).cmp(&(other.weight(), other.a0, &other.middle, other.end))
    }
}

impl PartialOrd for IIWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Commutative product of non-unit, non-vanishing words, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolMonomial(Vec<IIWord>);

impl SymbolMonomial {
    pub fn one() -> Self {
        SymbolMonomial(Vec::new())
    }
    /// None when the word vanishes.
    pub fn from_word(w: &IIWord) -> Option<Self> {
        if w.vanishes() {
            None
        } else if w.is_unit() {
            Some(Self::one())
        } else {
            Some(SymbolMonomial(vec![w.clone()]))
        }
    }
    pub fn factors(&self) -> &[IIWord] {
        &self.0
    }
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
    pub fn weight(&self) -> usize {
        self.0.iter().map(IIWord::weight).sum()
    }
    pub fn depth(&self) -> usize {
        self.0.iter().map(IIWord::depth).sum()
    }
    pub fn mul(&self, other: &Self) -> Self {
        let mut f: Vec<IIWord> = self.0.iter().chain(&other.0).cloned().collect();
        f.sort();
        SymbolMonomial(f)
    }
}

pub type Coeff = BigRational;

fn add_into<K: Ord>(map: &mut BTreeMap<K, Coeff>, k: K, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: BTreeMap<SymbolMonomial, Coeff>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::monomial(SymbolMonomial::one(), Coeff::one())
    }
    pub fn monomial(m: SymbolMonomial, c: Coeff) -> Self {
        let mut out = Self::zero();
        add_into(&mut out.terms, m, c);
        out
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            add_into(&mut self.terms, m.clone(), c.clone());
        }
    }
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_into(&mut out.terms, a.mul(b), x * y);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    pub terms: BTreeMap<(SymbolMonomial, IIWord), Coeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, left: SymbolMonomial, right: IIWord, c: Coeff) {
        if right.vanishes() {
            return;
        }
        add_into(&mut self.terms, (left, right), c);
    }
    /// Coefficient of left ⊗ right.
    pub fn coeff(&self, left: &SymbolMonomial, right: &IIWord) -> Coeff {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }
}

pub fn normalize(w: &IIWord) -> AlgebraElement {
    match SymbolMonomial::from_word(w) {
        Some(m) => AlgebraElement::monomial(m, Coeff::one()),
        None => AlgebraElement::zero(),
    }
}

/// Goncharov's formula: sum over all subsequences 0 = i_0 < i_1 < ... < i_l <
/// i_{l+1} = k+1 of the product of the cut words tensored with the word on
/// the chosen points.
pub fn goncharov_coproduct(w: &IIWord) -> TensorElement {
    let mut out = TensorElement::zero();
    if w.vanishes() {
        return out;
    }
    let k = w.weight();
    let mut a = Vec::with_capacity(k + 2);
    a.push(w.a0);
    a.extend_from_slice(&w.middle);
    a.push(w.end);
    'subsets: for mask in 0u64..(1u64 << k) {
        let mut cuts = vec![0usize];
        cuts.extend((0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1));
        cuts.push(k + 1);
        let mut left = SymbolMonomial::one();
        for pair in cuts.windows(2) {
            let (s, t) = (pair[0], pair[1]);
            let piece = IIWord::new(a[s], a[s + 1..t].to_vec(), a[t]);
            match SymbolMonomial::from_word(&piece) {
                Some(m) => left = left.mul(&m),
                None => continue 'subsets,
            }
        }
        let right = IIWord::new(w.a0, cuts[1..cuts.len() - 1].iter().map(|&i| a[i]).collect(), w.end);
        out.add_term(left, right, Coeff::one());
    }
    out
}

/// Δ of a monomial, with the right slot a monomial as well.
fn coproduct_monomial(m: &SymbolMonomial) -> BTreeMap<(SymbolMonomial, SymbolMonomial), Coeff> {
    let mut acc = BTreeMap::new();
    acc.insert((SymbolMonomial::one(), SymbolMonomial::one()), Coeff::one());
    for f in m.factors() {
        let df = goncharov_coproduct(f);
        let mut next = BTreeMap::new();
        for ((l1, r1), c1) in &acc {
            for ((l2, r2), c2) in &df.terms {
                let Some(r2) = SymbolMonomial::from_word(r2) else { continue };
                add_into(&mut next, (l1.mul(l2), r1.mul(&r2)), c1 * c2);
            }
        }
        acc = next;
    }
    acc
}

pub type TripleTerms = BTreeMap<(SymbolMonomial, SymbolMonomial, IIWord), Coeff>;

/// (Δ ⊗ id) ∘ Δ.
pub fn coproduct_left_iterate(w: &IIWord) -> TripleTerms {
    let mut out = TripleTerms::new();
    for ((m, r), c) in &goncharov_coproduct(w).terms {
        for ((l1, l2), c2) in coproduct_monomial(m) {
            add_into(&mut out, (l1, l2, r.clone()), c * c2);
        }
    }
    out
}

/// (id ⊗ Δ) ∘ Δ.
pub fn coproduct_right_iterate(w: &IIWord) -> TripleTerms {
    let mut out = TripleTerms::new();
    for ((m, r), c) in &goncharov_coproduct(w).terms {
        for ((m2, r2), c2) in &goncharov_coproduct(r).terms {
            add_into(&mut out, (m.clone(), m2.clone(), r2.clone()), c * c2);
        }
    }
    out
}

/// Splits I(0; {0}^{l_0}, e_1, {0}^{l_1}, ..., e_d, {0}^{l_d}; e_{d+1}) into
/// (e_1..e_{d+1}, l_0..l_d).
pub fn canonical_shape(w: &IIWord) -> Result<(Vec<UnityRoot>, Vec<usize>)> {
    let Letter::Root(last) = w.end else {
        return Err(Error::NotCanonical);
    };
    if w.a0 != Letter::Zero {
        return Err(Error::NotCanonical);
    }
    let mut eps = Vec::new();
    let mut ls = vec![0usize];
    for l in &w.middle {
        match l {
            Letter::Zero => *ls.last_mut().unwrap() += 1,
            Letter::Root(e) => {
                eps.push(*e);
                ls.push(0);
            }
        }
    }
    eps.push(last);
    Ok((eps, ls))
}

fn canonical_word(eps: &[UnityRoot], ls: &[usize]) -> IIWord {
    // eps has one more entry than the interior letters; ls has len(eps) entries.
    let mut middle = vec![Letter::Zero; ls[0]];
    for (e, l) in eps[..eps.len() - 1].iter().zip(&ls[1..]) {
        middle.push(Letter::Root(*e));
        middle.extend(std::iter::repeat_n(Letter::Zero, *l));
    }
    IIWord::new(Letter::Zero, middle, Letter::Root(*eps.last().unwrap()))
}

fn depth_one_factor(x: UnityRoot, r: usize) -> SymbolMonomial {
    let mut middle = vec![Letter::Root(x)];
    middle.extend(std::iter::repeat_n(Letter::Zero, r));
    SymbolMonomial(vec![IIWord::new(Letter::Zero, middle, Letter::Root(UnityRoot(0)))])
}

/// The explicit depth-leading part of Δ(w) for a word of canonical shape:
/// 1⊗w plus the two binomial sums whose left factors are I(0; x, {0}^r; 1).
pub fn depth_leading_coproduct(lv: &Level, w: &IIWord) -> Result<TensorElement> {
    let (eps, ls) = canonical_shape(w)?;
    let mut out = TensorElement::zero();
    if w.vanishes() {
        return Ok(out);
    }
    out.add_term(SymbolMonomial::one(), w.clone(), Coeff::one());
    let d = eps.len() - 1;
    let sign = |e: usize| if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    // interior letter i (1-based) is eps[i-1]; zero run after it is ls[i]
    for i in 1..=d {
        let x = lv.div(eps[i - 1], eps[i]);
        for r in ls[i]..=ls[i - 1] + ls[i] {
            let c = sign(r - ls[i]) * binomial(r as u64, ls[i] as u64);
            let mut e2 = eps.clone();
            e2.remove(i - 1);
            let mut l2 = ls.clone();
            l2[i - 1] = ls[i - 1] + ls[i] - r;
            l2.remove(i);
            out.add_term(depth_one_factor(x, r), canonical_word(&e2, &l2), Coeff::from_integer(c));
        }
    }
    for i in 1..d {
        let x = lv.div(eps[i], eps[i - 1]);
        for r in ls[i]..=ls[i] + ls[i + 1] {
            let c = -(sign(ls[i]) * binomial(r as u64, ls[i] as u64));
            let mut e2 = eps.clone();
            e2.remove(i);
            let mut l2 = ls.clone();
            l2[i] = ls[i] + ls[i + 1] - r;
            l2.remove(i + 1);
            out.add_term(depth_one_factor(x, r), canonical_word(&e2, &l2), Coeff::from_integer(c));
        }
    }
    Ok(out)
}

/// Parses `I(a0; a1, ..., ak; a_end)` where each letter is `0`, `1` or `eK`
/// (zeta_N^K, 0 <= K < N).
pub fn parse_word(n: u64, text: &str) -> Result<IIWord> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, n };
    p.ws();
    p.expect(b'I')?;
    p.ws();
    p.expect(b'(')?;
    let a0 = p.letter()?;
    p.ws();
    p.expect(b';')?;
    let mut middle = Vec::new();
    p.ws();
    if p.peek() != Some(b';') {
        loop {
            middle.push(p.letter()?);
            p.ws();
            match p.peek() {
                Some(b',') => p.pos += 1,
                _ => break,
            }
        }
    }
    p.ws();
    p.expect(b';')?;
    let end = p.letter()?;
    p.ws();
    p.expect(b')')?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(IIWord::new(a0, middle, end))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: u64,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }
    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }
    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }
    fn digits(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }
    fn letter(&mut self) -> Result<Letter> {
        self.ws();
        let start = self.pos;
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                let k = self.digits().ok_or_else(|| self.err("expected exponent after 'e'"))?;
                if k >= self.n {
                    self.pos = start;
                    return Err(self.err(&format!("exponent {k} is not below N = {}", self.n)));
                }
                Ok(Letter::Root(UnityRoot(k)))
            }
            Some(c) if c.is_ascii_digit() => match self.digits() {
                Some(0) => Ok(Letter::Zero),
                Some(1) => Ok(Letter::Root(UnityRoot(0))),
                _ => {
                    self.pos = start;
                    Err(self.err("letter must be 0, 1 or eK"))
                }
            },
            _ => Err(self.err("expected a letter")),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Zero => write!(f, "0"),
            Letter::Root(UnityRoot(0)) => write!(f, "1"),
            Letter::Root(UnityRoot(k)) => write!(f, "e{k}"),
        }
    }
}

impl fmt::Display for IIWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mid: Vec<String> = self.middle.iter().map(Letter::to_string).collect();
        write!(f, "I({}; {}; {})", self.a0, mid.join(", "), self.end)
    }
}

impl fmt::Display for SymbolMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for w in &self.0 {
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Coeff)>,
) -> fmt::Result {
    let mut first = true;
    for (body, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        write!(f, "{body}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|((m, w), c)| (format!("{m}⊗{w}"), c)))
    }
}
