use std::collections::HashMap;

use crate::cyclotomic::{GaloisElement, Level, UnityRoot};
use crate::{Error, Result};

/// ⟦ε_1, ..., ε_d; l_1, ..., l_d⟧. The empty sequence (d = 0) is allowed
/// internally as the unit of the tensor algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiSeq {
    pub eps: Vec<UnityRoot>,
    pub ls: Vec<u32>,
}

impl BiSeq {
    pub fn new(eps: Vec<UnityRoot>, ls: Vec<u32>) -> Result<Self> {
        if eps.len() != ls.len() || eps.is_empty() {
            return Err(Error::Invalid(format!(
                "bi-sequence needs d >= 1 roots and as many exponents, got {} and {}",
                eps.len(),
                ls.len()
            )));
        }
        Ok(BiSeq { eps, ls })
    }

    pub fn empty() -> Self {
        BiSeq { eps: Vec::new(), ls: Vec::new() }
    }

    pub fn depth(&self) -> usize {
        self.eps.len()
    }

    pub fn weight(&self) -> u32 {
        self.eps.len() as u32 + self.ls.iter().sum::<u32>()
    }

    /// Appends one slot at the end.
    pub fn pushed(&self, e: UnityRoot, l: u32) -> Self {
        let mut out = self.clone();
        out.eps.push(e);
        out.ls.push(l);
        out
    }

    /// Diagonal Galois action on the roots.
    pub fn act(&self, lv: &Level, g: GaloisElement) -> Self {
        BiSeq { eps: self.eps.iter().map(|&e| lv.act(g, e)).collect(), ls: self.ls.clone() }
    }
}

/// All compositions of `total` into `parts` non-negative parts, in
/// lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=total {
            cur.push(a);
            rec(total - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// all of mu_N
    Mu,
    /// nu_N only (special levels)
    Nu,
}

/// Bijection between {0, ..., dim-1} and the bi-sequences of depth d and
/// weight k over an alphabet, ordered by (ls, eps exponents).
#[derive(Clone, Debug)]
pub struct XSpaceIndexer {
    pub d: usize,
    pub k: u32,
    pub alphabet: Alphabet,
    letters: Vec<UnityRoot>,
    pos: HashMap<UnityRoot, usize>,
    comps: Vec<Vec<u32>>,
    comp_index: HashMap<Vec<u32>, usize>,
    block: usize,
}

impl XSpaceIndexer {
    pub fn new(lv: &Level, d: usize, k: u32, alphabet: Alphabet) -> Result<Self> {
        if d == 0 || (k as usize) < d {
            return Err(Error::Invalid(format!("need k >= d >= 1, got k = {k}, d = {d}")));
        }
        let letters = match alphabet {
            Alphabet::Mu => lv.all_roots().collect(),
            Alphabet::Nu => lv.nu_elements()?,
        };
        let pos = letters.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let comps = compositions(k - d as u32, d);
        let comp_index = comps.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let block = letters.len().pow(d as u32);
        Ok(XSpaceIndexer { d, k, alphabet, letters, pos, comps, comp_index, block })
    }

    pub fn dim(&self) -> usize {
        self.block * self.comps.len()
    }

    pub fn letters(&self) -> &[UnityRoot] {
        &self.letters
    }

    pub fn symbol(&self, i: usize) -> BiSeq {
        let ls = self.comps[i / self.block].clone();
        let mut r = i % self.block;
        let a = self.letters.len();
        let mut eps = vec![UnityRoot(0); self.d];
        for j in (0..self.d).rev() {
            eps[j] = self.letters[r % a];
            r /= a;
        }
        BiSeq { eps, ls }
    }

    pub fn index(&self, b: &BiSeq) -> Option<usize> {
        if b.depth() != self.d {
            return None;
        }
        let c = *self.comp_index.get(&b.ls)?;
        let mut r = 0;
        for e in &b.eps {
            r = r * self.letters.len() + *self.pos.get(e)?;
        }
        Some(c * self.block + r)
    }

    pub fn symbols(&self) -> impl Iterator<Item = BiSeq> + '_ {
        (0..self.dim()).map(|i| self.symbol(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_level;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn indexer_roundtrip() {
        let lv = make_level(9).unwrap();
        let ix = XSpaceIndexer::new(&lv, 2, 4, Alphabet::Nu).unwrap();
        assert_eq!(ix.dim(), 9 * 3);
        for i in 0..ix.dim() {
            assert_eq!(ix.index(&ix.symbol(i)), Some(i));
        }
        let mu = XSpaceIndexer::new(&lv, 2, 2, Alphabet::Mu).unwrap();
        assert_eq!(mu.dim(), 81);
        assert_eq!(mu.symbol(1).eps, vec![UnityRoot(0), UnityRoot(1)]);
        assert!(ix.index(&BiSeq::new(vec![UnityRoot(2), UnityRoot(1)], vec![0, 2]).unwrap()).is_none());
    }

    #[test]
    fn weights() {
        let b = BiSeq::new(vec![UnityRoot(1), UnityRoot(4)], vec![2, 0]).unwrap();
        assert_eq!((b.depth(), b.weight()), (2, 4));
        assert!(BiSeq::new(vec![], vec![]).is_err());
    }
}
