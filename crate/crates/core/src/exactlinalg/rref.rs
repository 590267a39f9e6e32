use std::collections::BTreeMap;

use super::field::Field;
use super::sparse::{SparseMat, SparseVec};

/// Reduced row echelon form with leading (smallest-index) pivots.
/// Every stored row has coefficient one at its pivot and zero at every
/// other pivot column.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub field: F,
    pub ncols: usize,
    pub pivots: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> Rref<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Rref { field, ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the current pivots.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out = v.clone();
        for (c, x) in v.iter() {
            if let Some(p) = self.pivots.get(c) {
                out = out.add_scaled(f, p, &f.neg(x));
            }
        }
        out
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let f = self.field.clone();
        let r = self.reduce(v);
        let Some((c, lead)) = r.entries().first().cloned() else {
            return false;
        };
        let r = r.scale(&f, &f.inv(&lead).expect("nonzero"));
        for p in self.pivots.values_mut() {
            if let Some(x) = p.get(c).cloned() {
                *p = p.add_scaled(&f, &r, &f.neg(&x));
            }
        }
        self.pivots.insert(c, r);
        true
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn from_matrix(m: &SparseMat<F>) -> Self {
        let mut r = Rref::new(m.field.clone(), m.ncols);
        for row in &m.rows {
            r.insert(row);
        }
        r
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Right null space basis: one vector per free column, equal to one at
    /// that column and zero at the other free columns.
    pub fn kernel(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let free = self.free_columns();
        let mut by_free: BTreeMap<usize, Vec<(usize, F::Elem)>> =
            free.iter().map(|&c| (c, vec![(c, f.one())])).collect();
        for (&pc, row) in &self.pivots {
            for (c, x) in row.iter() {
                if *c != pc {
                    by_free.get_mut(c).expect("free column").push((pc, f.neg(x)));
                }
            }
        }
        by_free
            .into_values()
            .map(|pairs| SparseVec::from_pairs(f, pairs))
            .collect()
    }
}

pub fn kernel_basis<F: Field>(m: &SparseMat<F>) -> Vec<SparseVec<F::Elem>> {
    Rref::from_matrix(m).kernel()
}

/// A quotient of the free space on `ambient_dim` symbols by the span of
/// some relations, with a canonical rewrite into the surviving basis.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<F: Field> {
    pub field: F,
    pub ambient_dim: usize,
    pub relations: SparseMat<F>,
    /// Free ambient indices, ascending.
    pub basis: Vec<usize>,
    /// For each ambient index, its class written on basis indices.
    pub rewrite: Vec<SparseVec<F::Elem>>,
    position: Vec<Option<usize>>,
}

impl<F: Field> QuotientPresentation<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of an ambient basis symbol inside `basis`, if it survives.
    pub fn position(&self, ambient: usize) -> Option<usize> {
        self.position[ambient]
    }

    /// Rewrites an ambient vector; the result is indexed by basis position.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut pairs = Vec::new();
        for (i, x) in v.iter() {
            for (j, y) in self.rewrite[*i].iter() {
                pairs.push((self.position[*j].expect("basis index"), f.mul(x, y)));
            }
        }
        SparseVec::from_pairs(f, pairs)
    }

    /// Same as `reduce` but keeps ambient indices.
    pub fn reduce_ambient(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut pairs = Vec::new();
        for (i, x) in v.iter() {
            for (j, y) in self.rewrite[*i].iter() {
                pairs.push((*j, f.mul(x, y)));
            }
        }
        SparseVec::from_pairs(f, pairs)
    }
}

/// Presents the quotient, pivoting on the largest index of each relation so
/// that small indices survive as basis symbols.
pub fn quotient<F: Field>(field: F, ambient_dim: usize, relations: SparseMat<F>) -> QuotientPresentation<F> {
    let flip = |i: usize| ambient_dim - 1 - i;
    let mut rr = Rref::new(field.clone(), ambient_dim);
    for row in &relations.rows {
        rr.insert(&row.map_indices(flip));
    }
    let mut rewrite: Vec<SparseVec<F::Elem>> = (0..ambient_dim)
        .map(|i| SparseVec::unit(&field, i))
        .collect();
    for (&pc, row) in &rr.pivots {
        let amb = flip(pc);
        let pairs = row
            .iter()
            .filter(|(c, _)| *c != pc)
            .map(|(c, x)| (flip(*c), field.neg(x)))
            .collect();
        rewrite[amb] = SparseVec::from_pairs(&field, pairs);
    }
    let mut basis: Vec<usize> = rr.free_columns().into_iter().map(flip).collect();
    basis.sort_unstable();
    let mut position = vec![None; ambient_dim];
    for (k, &b) in basis.iter().enumerate() {
        position[b] = Some(k);
    }
    QuotientPresentation { field, ambient_dim, relations, basis, rewrite, position }
}
