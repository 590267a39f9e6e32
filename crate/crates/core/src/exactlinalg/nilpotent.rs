use super::field::Field;
use super::sparse::SparseVec;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Index(usize),
    NotNilpotent,
}

/// Least n <= dim with T^n = 0, found by pushing every basis vector through
/// the operator until it dies. An operator that kills everything has index 1.
pub fn nilpotency_index<F, A>(field: &F, dim: usize, apply: A) -> Nilpotency
where
    F: Field,
    A: Fn(&SparseVec<F::Elem>) -> SparseVec<F::Elem> + Sync,
{
    if dim == 0 {
        return Nilpotency::Index(0);
    }
    let steps = par::map_indexed(dim, |i| {
        let mut v = SparseVec::unit(field, i);
        for n in 1..=dim {
            v = apply(&v);
            if v.is_zero() {
                return Some(n);
            }
        }
        None
    });
    let mut worst = 0;
    for s in steps {
        match s {
            Some(n) => worst = worst.max(n),
            None => return Nilpotency::NotNilpotent,
        }
    }
    Nilpotency::Index(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::{PrimeField, Rationals, SparseMat};

    #[test]
    fn zero_operator() {
        let q = Rationals;
        assert_eq!(nilpotency_index(&q, 5, |_| SparseVec::zero()), Nilpotency::Index(1));
    }

    #[test]
    fn jordan_block() {
        let f = PrimeField::new(3).unwrap();
        // e0 -> 0, e1 -> e0, e2 -> e1
        let shift = |v: &SparseVec<u64>| {
            SparseVec::from_pairs(&f, v.iter().filter(|e| e.0 > 0).map(|(i, x)| (i - 1, *x)).collect())
        };
        assert_eq!(nilpotency_index(&f, 3, shift), Nilpotency::Index(3));
    }

    #[test]
    fn identity_is_not_nilpotent() {
        let f = PrimeField::new(5).unwrap();
        let id = SparseMat::identity(f, 3);
        let _ = id;
        assert_eq!(nilpotency_index(&f, 3, |v| v.clone()), Nilpotency::NotNilpotent);
    }
}
