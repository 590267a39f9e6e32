//! Sparse elimination with the Markowitz-lite pivot rule: among the active
//! rows, the one with fewest nonzeros (ties: smallest row index) is the next
//! pivot row, and its smallest column is the pivot column.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Field;
use super::sparse::{SparseMat, SparseVec};

/// How a target row is cleared against a pivot row at the pivot column.
pub(crate) trait RowArith {
    type E: Clone;
    fn eliminate(&self, pivot: &SparseVec<Self::E>, pcol: usize, target: &SparseVec<Self::E>) -> SparseVec<Self::E>;
}

pub(crate) struct FieldArith<'a, F: Field>(pub &'a F);

impl<F: Field> RowArith for FieldArith<'_, F> {
    type E = F::Elem;
    fn eliminate(&self, pivot: &SparseVec<F::Elem>, pcol: usize, target: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.0;
        let a = pivot.get(pcol).expect("pivot entry");
        let b = target.get(pcol).expect("target entry");
        let c = f.neg(&f.div(b, a).expect("nonzero pivot"));
        target.add_scaled(f, pivot, &c)
    }
}

/// Fraction-free integer elimination: `a*target - b*pivot` with the common
/// factor of (a, b) removed first and the row content divided out after.
pub(crate) struct IntArith;

impl RowArith for IntArith {
    type E = BigInt;
    fn eliminate(&self, pivot: &SparseVec<BigInt>, pcol: usize, target: &SparseVec<BigInt>) -> SparseVec<BigInt> {
        let a = pivot.get(pcol).expect("pivot entry");
        let b = target.get(pcol).expect("target entry");
        let g = a.gcd(b);
        let (a, b) = (a / &g, b / &g);
        let (x, y) = (target.entries(), pivot.entries());
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let v;
            let idx;
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                idx = x[i].0;
                v = &a * &x[i].1;
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                idx = y[j].0;
                v = -(&b * &y[j].1);
                j += 1;
            } else {
                idx = x[i].0;
                v = &a * &x[i].1 - &b * &y[j].1;
                i += 1;
                j += 1;
            }
            if !v.is_zero() {
                out.push((idx, v));
            }
        }
        remove_content(&mut out);
        SparseVec::from_sorted_unchecked(out)
    }
}

pub(crate) fn remove_content(entries: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in entries.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, v) in entries.iter_mut() {
        *v = &*v / &g;
    }
}

/// u64 arithmetic modulo a prime below 2^32; products stay within u64.
pub(crate) struct ModArith(pub u64);

impl RowArith for ModArith {
    type E = u64;
    fn eliminate(&self, pivot: &SparseVec<u64>, pcol: usize, target: &SparseVec<u64>) -> SparseVec<u64> {
        let p = self.0;
        let a = *pivot.get(pcol).expect("pivot entry");
        let b = *target.get(pcol).expect("target entry");
        let c = p - crate::arith::mul_mod(b, crate::arith::inv_mod(a, p).unwrap(), p);
        let (x, y) = (target.entries(), pivot.entries());
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push(x[i]);
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                out.push((y[j].0, crate::arith::mul_mod(c, y[j].1, p)));
                j += 1;
            } else {
                let v = (x[i].1 + crate::arith::mul_mod(c, y[j].1, p)) % p;
                if v != 0 {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec::from_sorted_unchecked(out)
    }
}

/// Runs elimination to completion. Returns the pivot rows in pivot order as
/// (pivot column, row). Each pivot row is free of all earlier pivot columns.
pub(crate) fn markowitz<R: RowArith>(arith: &R, rows: Vec<SparseVec<R::E>>, ncols: usize) -> Vec<(usize, SparseVec<R::E>)> {
    let mut active: Vec<Option<SparseVec<R::E>>> = Vec::with_capacity(rows.len());
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut queue = BTreeSet::new();
    for (id, r) in rows.into_iter().enumerate() {
        if r.is_zero() {
            active.push(None);
            continue;
        }
        for (c, _) in r.iter() {
            col_rows[*c].push(id as u32);
        }
        queue.insert((r.nnz(), id));
        active.push(Some(r));
    }
    let mut pivots = Vec::new();
    while let Some((nnz, id)) = queue.pop_first() {
        let prow = match active[id].take() {
            Some(r) => r,
            None => continue,
        };
        debug_assert_eq!(prow.nnz(), nnz);
        let pcol = prow.entries()[0].0;
        let touched = std::mem::take(&mut col_rows[pcol]);
        for &t in &touched {
            let t = t as usize;
            let Some(old) = active[t].as_ref() else { continue };
            if old.get(pcol).is_none() {
                continue;
            }
            let new = arith.eliminate(&prow, pcol, old);
            queue.remove(&(old.nnz(), t));
            let old_cols: Vec<usize> = old.iter().map(|e| e.0).collect();
            for (c, _) in new.iter() {
                if old_cols.binary_search(c).is_err() {
                    col_rows[*c].push(t as u32);
                }
            }
            if new.is_zero() {
                active[t] = None;
            } else {
                queue.insert((new.nnz(), t));
                active[t] = Some(new);
            }
        }
        pivots.push((pcol, prow));
    }
    pivots
}

pub(crate) fn generic_rank<F: Field>(m: &SparseMat<F>) -> usize {
    markowitz(&FieldArith(&m.field), m.rows.clone(), m.ncols).len()
}

/// Rank of an integer matrix modulo a prime below 2^32.
pub fn rank_mod_int(rows: &[SparseVec<BigInt>], ncols: usize, p: u64) -> usize {
    let pb = BigInt::from(p);
    let reduced: Vec<SparseVec<u64>> = rows
        .iter()
        .map(|r| {
            let e = r
                .iter()
                .filter_map(|(i, v)| {
                    let x = v.mod_floor(&pb);
                    let x: u64 = x.try_into().unwrap();
                    (x != 0).then_some((*i, x))
                })
                .collect();
            SparseVec::from_sorted_unchecked(e)
        })
        .collect();
    markowitz(&ModArith(p), reduced, ncols).len()
}

pub(crate) fn rank_fraction_free(rows: Vec<SparseVec<BigInt>>, ncols: usize) -> usize {
    markowitz(&IntArith, rows, ncols).len()
}
