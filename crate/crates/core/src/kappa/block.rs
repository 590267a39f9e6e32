//! kappa(N) by splitting Y1 ⊗ Y1 into isotypic pieces for the diagonal action
//! of (Z/N)^x. Each piece is a small matrix over Z[zeta_lambda]; its rank is
//! computed modulo primes l = 1 mod lambda (one prime ideal per Galois
//! conjugate character) and certified with a Hadamard bound.

use std::collections::BTreeMap;

use crate::arith::{pow_mod, primes_congruent_one, primitive_root};
use crate::depthgraded::y_relations;
use crate::exactlinalg::{quotient, rank_rational, EchelonMod, Field, PrimeField, RankOptions, Rationals, SparseMat, SparseVec};
use crate::par::Exec;
use crate::{Error, Result};

use super::group::{DivisorOrbits, UnitGroup};

const PRIME_FLOOR: u64 = 1 << 29;
const MIN_PRIMES: usize = 2;
const MARGIN_BITS: f64 = 2.0;

#[derive(Clone, Debug)]
pub(crate) struct BlockOutcome {
    pub kappa: usize,
    pub dim_y1: usize,
    pub rank: usize,
    pub primes: Vec<u64>,
}

/// One term s * e_x ⊗ e_y, stored by (lift, order index) of each factor.
#[derive(Clone, Copy, Debug)]
struct Term {
    gx: usize,
    dx: usize,
    gy: usize,
    dy: usize,
    s: i64,
}

struct Setup {
    g: UnitGroup,
    table: Vec<u32>,
    nd: usize,
    /// valid[psi * nd + d]
    valid: Vec<bool>,
    /// Relation generators as (residue, coefficient).
    rels: Vec<Vec<(u64, i64)>>,
    rows: Vec<[Term; 3]>,
    orb: DivisorOrbits,
}

impl Setup {
    fn new(n: u64) -> Self {
        let g = UnitGroup::new(n);
        let s = g.size();
        let table = g.char_table();
        let orb = DivisorOrbits::new(&g);
        let nd = orb.divisors.len();
        let mut valid = vec![false; s * nd];
        for c in 0..s {
            for d in 0..nd {
                valid[c * nd + d] = orb.admissible(&table, s, c, d);
            }
        }

        let mut rels: Vec<Vec<(u64, i64)>> = vec![vec![(0, 1)]];
        for &d in &orb.divisors {
            let a = (n / d) % n;
            rels.push(vec![(a, 1), ((n - a) % n, -1)]);
        }
        for &m in orb.divisors.iter().filter(|&&m| m >= 2) {
            for &d in &orb.divisors {
                let a = (n / d) % n;
                if a * m % n == 0 {
                    continue;
                }
                let mut r = vec![(a * m % n, 1)];
                r.extend((0..m).map(|j| ((a + j * (n / m)) % n, -1)));
                rels.push(r);
            }
        }

        let term = |x: u64, y: u64, s: i64| Term {
            gx: orb.lift[x as usize],
            dx: orb.order_of[x as usize],
            gy: orb.lift[y as usize],
            dy: orb.order_of[y as usize],
            s,
        };
        let mut rows = Vec::new();
        for (di, &d) in orb.divisors.iter().enumerate() {
            let a = (n / d) % n;
            let mut seen = vec![false; n as usize];
            for b in 0..n {
                if seen[b as usize] {
                    continue;
                }
                for &h in &orb.stabilizers[di] {
                    seen[(g.elems[h] * b % n) as usize] = true;
                }
                let (amb, bma) = ((a + n - b) % n, (b + n - a) % n);
                rows.push([term(amb, b, 1), term(bma, a, -1), term(b, a, 1)]);
            }
        }
        Setup { g, table, nd, valid, rels, rows, orb }
    }

    fn chi(&self, c: usize, g: usize) -> usize {
        self.table[c * self.g.size() + g] as usize
    }

    fn is_valid(&self, c: usize, d: usize) -> bool {
        self.valid[c * self.nd + d]
    }

    /// Count-norm of a projected relation: terms landing on each order.
    fn rel_norm(&self, c: usize, r: &[(u64, i64)]) -> f64 {
        let mut cnt = vec![0f64; self.nd];
        for &(x, _) in r {
            let d = self.orb.order_of[x as usize];
            if self.is_valid(c, d) {
                cnt[d] += 1.0;
            }
        }
        cnt.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Y_psi modulo one prime: class of each order in the quotient basis.
#[derive(Clone, Debug, Default)]
struct Piece {
    dx: usize,
    dy: usize,
    /// class[d] has length dy; empty when d is not a coordinate.
    class: Vec<Vec<u64>>,
}

struct PrimeData {
    l: u64,
    pw: Vec<u64>,
    pieces: Vec<Piece>,
}

fn project(st: &Setup, c: usize, r: &[(u64, i64)], f: &PrimeField, pw: &[u64]) -> SparseVec<u64> {
    let pairs = r
        .iter()
        .filter_map(|&(x, k)| {
            let d = st.orb.order_of[x as usize];
            st.is_valid(c, d).then(|| (d, f.mul(&f.from_i64(k), &pw[st.chi(c, st.orb.lift[x as usize])])))
        })
        .collect();
    SparseVec::from_pairs(f, pairs)
}

fn prime_data(st: &Setup, l: u64) -> PrimeData {
    let lambda = st.g.lambda;
    let w = pow_mod(primitive_root(l), (l - 1) / lambda, l);
    let pw: Vec<u64> = (0..lambda).map(|k| pow_mod(w, k, l)).collect();
    let f = PrimeField::new(l).expect("prime");
    let nd = st.nd;
    let pieces = (0..st.g.size())
        .map(|c| {
            let rows: Vec<SparseVec<u64>> = st.rels.iter().map(|r| project(st, c, r, &f, &pw)).collect();
            let q = quotient(f, nd, SparseMat::from_rows(f, nd, rows));
            let dx = (0..nd).filter(|&d| st.is_valid(c, d)).count();
            // invalid orders carry no relation, so drop them from the basis
            let basis: Vec<usize> = q.basis.iter().copied().filter(|&d| st.is_valid(c, d)).collect();
            let dy = basis.len();
            let class = (0..nd)
                .map(|d| {
                    if !st.is_valid(c, d) {
                        return Vec::new();
                    }
                    let mut v = vec![0u64; dy];
                    for (j, x) in q.rewrite[d].iter() {
                        let k = basis.binary_search(j).expect("basis index");
                        v[k] = *x;
                    }
                    v
                })
                .collect();
            Piece { dx, dy, class }
        })
        .collect();
    PrimeData { l, pw, pieces }
}

fn blocks(st: &Setup, pd: &PrimeData, chi: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for psi in 0..st.g.size() {
        let rest = st.g.char_div(chi, psi);
        let (a, b) = (pd.pieces[psi].dy, pd.pieces[rest].dy);
        if a > 0 && b > 0 {
            out.push((psi, rest, off));
            off += a * b;
        }
    }
    out
}

fn block_cols(pd: &PrimeData, bl: &[(usize, usize, usize)]) -> usize {
    bl.iter().map(|&(a, b, _)| pd.pieces[a].dy * pd.pieces[b].dy).sum()
}

/// Rank of the chi piece of the image of D~ in Y1 ⊗ Y1 modulo one prime.
fn block_rank(st: &Setup, pd: &PrimeData, chi: usize) -> usize {
    let bl = blocks(st, pd, chi);
    let cols = block_cols(pd, &bl);
    if cols == 0 {
        return 0;
    }
    let (l, lambda) = (pd.l, st.g.lambda as usize);
    let mut ech = EchelonMod::new(l, cols);
    for row in &st.rows {
        let mut v = vec![0u64; cols];
        for t in row {
            let sgn = if t.s < 0 { l - 1 } else { 1 };
            for &(psi, rest, off) in &bl {
                let (cx, cy) = (&pd.pieces[psi].class[t.dx], &pd.pieces[rest].class[t.dy]);
                if cx.is_empty() || cy.is_empty() {
                    continue;
                }
                let e = (st.chi(psi, t.gx) + st.chi(rest, t.gy)) % lambda;
                let coef = pd.pw[e] * sgn % l;
                let w = cy.len();
                for (i, &a) in cx.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let ca = coef * a % l;
                    for (j, &b) in cy.iter().enumerate() {
                        let x = &mut v[off + i * w + j];
                        *x = (*x + ca * b) % l;
                    }
                }
            }
        }
        ech.insert(v);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// log2 of the relation part of the bound for one Y_psi: (dim R, log2 of the
/// largest norm in a basis picked greedily from short generators).
fn relation_basis(st: &Setup, pd: &PrimeData, c: usize) -> (usize, f64) {
    let f = PrimeField::new(pd.l).expect("prime");
    let nd = st.nd;
    let mut gens: Vec<(f64, Vec<u64>)> = st
        .rels
        .iter()
        .map(|r| {
            let mut v = vec![0u64; nd];
            for (d, x) in project(st, c, r, &f, &pd.pw).iter() {
                v[*d] = *x;
            }
            (st.rel_norm(c, r), v)
        })
        .collect();
    gens.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut ech = EchelonMod::new(pd.l, nd);
    let mut worst = 1f64;
    for (nrm, v) in gens {
        if ech.insert(v) {
            worst = worst.max(nrm);
        }
    }
    (ech.rank(), worst.log2())
}

/// log2 of a Hadamard bound for any minor of the chi piece of the X-level
/// matrix (relations stacked on the D~ rows) of size rank(relations) + cols.
fn log2_bound(st: &Setup, pd: &PrimeData, rel: &[(usize, f64)], chi: usize) -> f64 {
    let bl = blocks(st, pd, chi);
    let cols = block_cols(pd, &bl);
    let mut total = 0.0;
    for &(psi, rest, _) in &bl {
        let (a, b) = (&pd.pieces[psi], &pd.pieces[rest]);
        let (ra, la) = rel[psi];
        let (rb, lb) = rel[rest];
        total += (ra * b.dx) as f64 * la + ((a.dx - ra) * rb) as f64 * lb;
    }
    let mut norms: Vec<f64> = st
        .rows
        .iter()
        .map(|row| {
            let mut groups: BTreeMap<(usize, usize), f64> = BTreeMap::new();
            for t in row {
                *groups.entry((t.dx, t.dy)).or_default() += 1.0;
            }
            let mut sq = 0.0;
            for &(psi, rest, _) in &bl {
                for (&(dx, dy), &k) in &groups {
                    if st.is_valid(psi, dx) && st.is_valid(rest, dy) {
                        sq += k * k;
                    }
                }
            }
            if sq > 0.0 {
                0.5 * sq.log2()
            } else {
                0.0
            }
        })
        .collect();
    norms.sort_by(|a, b| b.total_cmp(a));
    total + norms.iter().take(cols).sum::<f64>()
}

#[derive(Clone, Debug)]
struct ClassState {
    members: Vec<usize>,
    cols: usize,
    best: usize,
    bits: f64,
    primes: usize,
    bound: Option<f64>,
    done: bool,
}

pub(crate) fn dim_y1(n: u64) -> usize {
    let rels = y_relations(&Rationals, n, 0);
    n as usize - rank_rational(&rels, &RankOptions::default()).rank
}

pub(crate) fn kappa_blocks(n: u64, exec: Exec, max_primes: usize) -> Result<BlockOutcome> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let st = Setup::new(n);
    let dim = dim_y1(n);
    let s = st.g.size();
    let minus_one = st.g.index_of(n - 1);
    let mut classes: BTreeMap<usize, ClassState> = BTreeMap::new();
    for c in (0..s).filter(|&c| st.chi(c, minus_one) == 0) {
        let e = classes.entry(st.g.galois_class(c)).or_insert_with(|| ClassState {
            members: Vec::new(),
            cols: 0,
            best: 0,
            bits: 0.0,
            primes: 0,
            bound: None,
            done: false,
        });
        e.members.push(c);
    }

    let mut used = Vec::new();
    let mut candidates = primes_congruent_one(PRIME_FLOOR, st.g.lambda, 0).take_while(|&l| l < 1 << 30);
    let mut tried = 0;
    while classes.values().any(|c| !c.done) {
        if tried >= max_primes {
            return Err(Error::Uncertified { n, primes: used.len() });
        }
        let Some(l) = candidates.next() else {
            return Err(Error::Uncertified { n, primes: used.len() });
        };
        tried += 1;
        if s as u64 % l == 0 {
            continue;
        }
        let pd = prime_data(&st, l);
        if pd.pieces.iter().map(|p| p.dy).sum::<usize>() != dim {
            continue;
        }
        used.push(l);
        let rel: Option<Vec<(usize, f64)>> = classes
            .values()
            .any(|c| c.bound.is_none())
            .then(|| (0..s).map(|c| relation_basis(&st, &pd, c)).collect());

        let pending: Vec<usize> = classes.iter().filter(|(_, c)| !c.done).flat_map(|(_, c)| c.members.clone()).collect();
        let ranks = exec.map(&pending, |&chi| block_rank(&st, &pd, chi));
        let rank_of: BTreeMap<usize, usize> = pending.iter().copied().zip(ranks).collect();

        for (&rep, c) in classes.iter_mut().filter(|(_, c)| !c.done) {
            if c.bound.is_none() {
                c.cols = block_cols(&pd, &blocks(&st, &pd, rep));
                c.bound = Some(log2_bound(&st, &pd, rel.as_ref().expect("relation data"), rep));
            }
            c.best = c.members.iter().map(|m| rank_of[m]).fold(c.best, usize::max);
            c.bits += (l as f64).log2();
            c.primes += 1;
            let b = c.bound.expect("bound");
            c.done = c.primes >= MIN_PRIMES && (c.best == c.cols || c.bits > b + MARGIN_BITS);
        }
    }

    let mut kappa = 0;
    let mut rank = 0;
    for c in classes.values() {
        kappa += (c.cols - c.best) * c.members.len();
        rank += c.best * c.members.len();
    }
    Ok(BlockOutcome { kappa, dim_y1: dim, rank, primes: used })
}
