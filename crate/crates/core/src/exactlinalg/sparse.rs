use super::field::Field;

/// Finitely supported vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone> SparseVec<E> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds a vector from arbitrary (index, value) pairs, summing repeats
    /// and dropping zeros.
    pub fn from_pairs<F: Field<Elem = E>>(field: &F, mut pairs: Vec<(usize, E)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = field.add(w, &v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !field.is_zero(v));
        SparseVec { entries }
    }

    /// Trusts the caller that indices are strictly increasing and values nonzero.
    pub fn from_sorted_unchecked(entries: Vec<(usize, E)>) -> Self {
        SparseVec { entries }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, i: usize) -> Self {
        SparseVec { entries: vec![(i, field.one())] }
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, E)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    /// self + c * other
    pub fn add_scaled<F: Field<Elem = E>>(&self, field: &F, other: &Self, c: &E) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = field.mul(c, &b[j].1);
                if !field.is_zero(&v) {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
                if !field.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, field.mul(c, v)))
                .filter(|(_, v)| !field.is_zero(v))
                .collect(),
        }
    }

    pub fn dot<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> E {
        let mut acc = field.zero();
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = field.add(&acc, &field.mul(&a[i].1, &b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self
    where
        E: Clone,
    {
        let mut entries: Vec<(usize, E)> =
            self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect();
        entries.sort_by_key(|e| e.0);
        SparseVec { entries }
    }
}

/// Row-major sparse matrix over a field.
#[derive(Clone, Debug)]
pub struct SparseMat<F: Field> {
    pub field: F,
    pub ncols: usize,
    pub rows: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMat<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        SparseMat { field, ncols, rows: Vec::new() }
    }

    pub fn from_rows(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < ncols)));
        SparseMat { field, ncols, rows }
    }

    /// Dense constructor, convenient for tests and small examples.
    pub fn from_dense_i64(field: F, data: &[Vec<i64>]) -> Self {
        let ncols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| {
                let pairs = r
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| (j, field.from_i64(v)))
                    .collect();
                SparseVec::from_pairs(&field, pairs)
            })
            .collect();
        SparseMat { field, ncols, rows }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let rows = (0..n).map(|i| SparseVec::unit(&field, i)).collect();
        SparseMat { field, ncols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, row: SparseVec<F::Elem>) {
        debug_assert!(row.max_index().map_or(true, |m| m < self.ncols));
        self.rows.push(row);
    }

    /// Matrix-vector product treating `v` as a column vector.
    pub fn apply(&self, v: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        self.rows.iter().map(|r| r.dot(&self.field, v)).collect()
    }

    /// Drops zero rows and exact duplicates. Rank-invariant.
    pub fn dedup_rows(&mut self)
    where
        F::Elem: std::hash::Hash + Eq,
    {
        let mut seen = std::collections::HashSet::new();
        self.rows
            .retain(|r| !r.is_zero() && seen.insert(r.entries().to_vec()));
    }
}
