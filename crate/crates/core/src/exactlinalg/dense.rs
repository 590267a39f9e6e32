//! Dense elimination modulo a prime below 2^32, used for the small blocks of
//! the character decomposition.

/// Rank of a row-major `rows x cols` matrix with entries already reduced
/// modulo `p`. The matrix is overwritten.
pub fn dense_rank_mod(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    debug_assert!(p < 1 << 32);
    debug_assert_eq!(a.len(), rows * cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = crate::arith::inv_mod(a[rank * cols + c], p).unwrap();
        for j in c..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let prow = &head[rank * cols..];
        for r in tail.chunks_exact_mut(cols) {
            let f = r[c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for j in c..cols {
                r[j] = (r[j] + f * prow[j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Incremental row echelon form modulo a prime below 2^30. Rows are reduced
/// with delayed modular reduction: up to `LAZY` fused multiply-adds are
/// accumulated in u64 before reducing.
#[derive(Clone, Debug)]
pub struct EchelonMod {
    p: u64,
    cols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

const LAZY: usize = 15;

impl EchelonMod {
    pub fn new(p: u64, cols: usize) -> Self {
        assert!(p < 1 << 30, "EchelonMod needs p < 2^30");
        EchelonMod { p, cols, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Adds a row with entries below `p`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if self.is_full() {
            return false;
        }
        let p = self.p;
        let mut pending = 0;
        for (k, &c) in self.pivots.iter().enumerate() {
            let f = v[c] % p;
            v[c] = 0;
            if f == 0 {
                continue;
            }
            let m = p - f;
            let row = &self.rows[k];
            for (x, r) in v[c + 1..].iter_mut().zip(&row[c + 1..]) {
                *x += m * r;
            }
            pending += 1;
            if pending == LAZY {
                for x in &mut v[c + 1..] {
                    *x %= p;
                }
                pending = 0;
            }
        }
        for x in v.iter_mut() {
            *x %= p;
        }
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = crate::arith::inv_mod(v[lead], p).unwrap();
        for x in &mut v[lead..] {
            *x = *x * inv % p;
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }
}
