//! The ten acceptance criteria, one PASS/FAIL line each. Exits non-zero if
//! any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclokappa_core::arith::{euler_phi, factorize};
use cyclokappa_core::coproduct::{coproduct_left_iterate, coproduct_right_iterate, IIWord, Letter};
use cyclokappa_core::cyclotomic::{make_level, UnityRoot};
use cyclokappa_core::depthgraded::{
    basis_bijectivity_check, decomposition_check, e_map, reduce_modp, theta_sum_check, unipotence_check,
    y_relations, Alphabet, BiSeq, ModpModel, ModpVec, XSpaceIndexer,
};
use cyclokappa_core::exactlinalg::{
    rank_integer, rank_rational, Nilpotency, RankMethod, RankOptions, Rationals, SparseVec,
};
use cyclokappa_core::kappa::{
    conjecture_report, dual_kernel_check, kappa, kappa_prime_formula, lower_bound_witnesses, table1,
};

struct Kappas(BTreeMap<u64, u64>);

impl Kappas {
    fn get(&mut self, n: u64) -> u64 {
        *self.0.entry(n).or_insert_with(|| kappa(n).expect("kappa").kappa)
    }
}

fn report(id: usize, ok: bool, secs: f64, detail: String) -> bool {
    println!("criterion {id:>2}: {} ({secs:.1}s) {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn table_regression(k: &mut Kappas) -> (bool, String) {
    let mut bad = Vec::new();
    let mut count = 0;
    for (&n, &want) in table1().range(..=120) {
        count += 1;
        let got = k.get(n);
        if got != want {
            bad.push(format!("N={n}: {got} vs {want}"));
        }
    }
    (bad.is_empty(), format!("{count} table values up to 120, mismatches: {bad:?}"))
}

fn large_n(k: &mut Kappas) -> (bool, String) {
    let want = [(121, 330), (143, 240), (169, 715), (187, 440), (209, 585), (221, 720), (289, 2380), (343, 1274), (361, 3876)];
    let bad: Vec<String> = want
        .iter()
        .filter_map(|&(n, w)| {
            let got = k.get(n);
            (got != w).then(|| format!("N={n}: {got} vs {w}"))
        })
        .collect();
    (bad.is_empty(), format!("{} levels, mismatches: {bad:?}", want.len()))
}

fn prime_formula(k: &mut Kappas) -> (bool, String) {
    let ps = [5u64, 7, 11, 13, 17, 19];
    let ok = ps.iter().all(|&p| Some(k.get(p)) == kappa_prime_formula(p));
    (ok, format!("p in {ps:?}"))
}

fn conjectures(k: &mut Kappas) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [5u64, 7, 11, 13] {
        let n = p * p;
        let v = conjecture_report(n, k.get(n));
        ok &= v.len() == 1 && v[0].shape == "p^2" && v[0].holds;
    }
    let v = conjecture_report(343, k.get(343));
    let cubic_fails = v.len() == 1 && v[0].shape == "p^3" && v[0].predicted == 245 && !v[0].holds && k.get(343) == 1274;
    notes.push(format!("p^3 at p=7: predicted 245, computed {}", k.get(343)));
    ok &= cubic_fails;
    let smooth: Vec<u64> = table1()
        .keys()
        .copied()
        .filter(|&n| n <= 384 && factorize(n).iter().all(|&(p, _)| p == 2 || p == 3))
        .collect();
    let smooth_ok = smooth.iter().all(|&n| k.get(n) == 0);
    notes.push(format!("{} levels 2^a 3^b all zero: {smooth_ok}", smooth.len()));
    (ok && smooth_ok, notes.join("; "))
}

fn special_grid() -> Vec<(u64, u32, usize)> {
    let mut out = Vec::new();
    for n in [8u64, 16, 9, 27] {
        for d in [2usize, 3] {
            for k in d as u32..=d as u32 + 2 {
                out.push((n, k, d));
            }
        }
    }
    out
}

fn unipotence() -> (bool, String) {
    let mut worst = 0;
    let mut bad = Vec::new();
    for (n, k, d) in special_grid() {
        match unipotence_check(&make_level(n).unwrap(), k, d).unwrap().result {
            Nilpotency::Index(i) => worst = worst.max(i),
            Nilpotency::NotNilpotent => bad.push((n, k, d)),
        }
    }
    (bad.is_empty(), format!("{} cases, largest index {worst}, failures {bad:?}", special_grid().len()))
}

fn basis() -> (bool, String) {
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in [8u64, 9, 16, 27] {
        let lv = make_level(n).unwrap();
        for d in 1..=3usize {
            for k in d as u32..=d as u32 + 2 {
                cases += 1;
                let r = basis_bijectivity_check(&lv, k, d).unwrap();
                if !(r.bijective && r.stable) {
                    bad.push((n, k, d));
                }
            }
        }
    }
    (bad.is_empty(), format!("{cases} cases, failures {bad:?}"))
}

fn decomposition() -> (bool, String) {
    let bad: Vec<_> =
        special_grid().into_iter().filter(|&(n, k, d)| !decomposition_check(&make_level(n).unwrap(), k, d).unwrap()).collect();
    (bad.is_empty(), format!("{} cases, failures {bad:?}", special_grid().len()))
}

fn r_example() -> (bool, String) {
    let m = ModpModel::new(&make_level(729).unwrap()).unwrap();
    let pair = |a: u64, b: u64| BiSeq::new(vec![UnityRoot(a), UnityRoot(b)], vec![0, 0]).unwrap();
    let sum = |start: u64, step: u64, count: u64| -> ModpVec { (0..count).map(|i| (pair(1, start + step * i), 1)).collect() };
    let expected = [sum(70, 81, 9), sum(4, 27, 27), sum(1, 9, 81), sum(1, 3, 243), ModpVec::new()];
    let mut v: ModpVec = [(pair(1, 100), 1)].into_iter().collect();
    let mut matched = 0;
    for e in &expected {
        v = m.apply(&v, |b| m.op_r(1, b)).unwrap();
        if &v != e {
            break;
        }
        matched += 1;
    }
    (matched == 5, format!("{matched}/5 iterates match, fifth is zero: {}", matched == 5))
}

fn dual() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for (p, q) in [(17u64, 2u64), (13, 3), (17, 3), (5, 7), (11, 5)] {
        let r = dual_kernel_check(p, q).unwrap();
        let w = lower_bound_witnesses(p, q).unwrap();
        let this = r.agrees() && w.ok() && w.count as u64 + 1 == w.n_q && w.count as u64 <= r.kappa;
        ok &= this;
        notes.push(format!("({p},{q}): ker {} kappa {} witnesses {}", r.kernel_dim, r.kappa, w.count));
    }
    (ok, notes.join("; "))
}

fn letters4() -> Vec<Letter> {
    let mut v = vec![Letter::Zero];
    v.extend((0..4).map(|i| Letter::Root(UnityRoot(i))));
    v
}

fn coassociative() -> (bool, usize) {
    let ls = letters4();
    let mut count = 0;
    for w in 0..=3usize {
        let total = ls.len().pow(w as u32 + 2);
        for mut code in 0..total {
            let mut pick = || {
                let l = ls[code % ls.len()];
                code /= ls.len();
                l
            };
            let a0 = pick();
            let middle: Vec<Letter> = (0..w).map(|_| pick()).collect();
            let word = IIWord::new(a0, middle, pick());
            count += 1;
            if coproduct_left_iterate(&word) != coproduct_right_iterate(&word) {
                return (false, count);
            }
        }
    }
    (true, count)
}

fn rank_oracle(rng: &mut ChaCha8Rng) -> bool {
    (0..200).all(|_| {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let keep = rng.gen_range(1..=r);
        let mut rows: Vec<SparseVec<BigInt>> = Vec::new();
        for i in 0..r {
            let entries: Vec<(usize, BigInt)> = if i < keep {
                (0..c).filter_map(|j| rng.gen_bool(0.6).then(|| (j, BigInt::from(rng.gen_range(-9i64..=9))))).collect()
            } else {
                // a combination of earlier rows, to force rank drops
                let (a, b) = (rng.gen_range(0..keep), rng.gen_range(0..keep));
                let mut dense = vec![BigInt::from(0); c];
                for (j, x) in rows[a].iter() {
                    dense[*j] += x * 2;
                }
                for (j, x) in rows[b].iter() {
                    dense[*j] -= x * 3;
                }
                dense.into_iter().enumerate().collect()
            };
            let entries = entries.into_iter().filter(|(_, x)| *x != BigInt::from(0)).collect();
            rows.push(SparseVec::from_sorted_unchecked(entries));
        }
        let fast = rank_integer(&rows, c, &RankOptions::default());
        let exact = rank_integer(&rows, c, &RankOptions { force_fraction_free: true, ..Default::default() });
        exact.method == RankMethod::FractionFree && fast.rank == exact.rank
    })
}

fn properties() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (coassoc, words) = coassociative();
    let oracle = rank_oracle(&mut rng);
    let dims = (3..=60u64).all(|n| {
        let nu = factorize(n).len() as u64;
        let dim = n as usize - rank_rational(&y_relations(&Rationals, n, 0), &RankOptions::default()).rank;
        dim as u64 == euler_phi(n) / 2 + nu - 1
    });
    let theta = [9u64, 27, 8, 16].iter().all(|&n| theta_sum_check(&make_level(n).unwrap()).unwrap());
    let mut integral = true;
    for n in [8u64, 9, 16, 27] {
        let lv = make_level(n).unwrap();
        let p = lv.special().unwrap().p;
        for _ in 0..20 {
            let d = rng.gen_range(1..=3usize);
            let k = d as u32 + rng.gen_range(0..=2);
            let ix = XSpaceIndexer::new(&lv, d, k, Alphabet::Nu).unwrap();
            let b = ix.symbol(rng.gen_range(0..ix.dim()));
            integral &= reduce_modp(&e_map(&lv, &b).unwrap(), p).is_some();
        }
    }
    let ok = coassoc && oracle && dims && theta && integral;
    (
        ok,
        format!(
            "coassociativity on {words} words {coassoc}, rank oracle {oracle}, dim Y1 3..60 {dims}, theta sums {theta}, p-integrality {integral}"
        ),
    )
}

fn main() {
    let mut k = Kappas(BTreeMap::new());
    let mut all = true;
    macro_rules! crit {
        ($id:expr, $e:expr) => {{
            let t = Instant::now();
            let (ok, detail) = $e;
            all &= report($id, ok, t.elapsed().as_secs_f64(), detail);
        }};
    }
    crit!(1, table_regression(&mut k));
    crit!(2, large_n(&mut k));
    crit!(3, prime_formula(&mut k));
    crit!(4, conjectures(&mut k));
    crit!(5, unipotence());
    crit!(6, basis());
    crit!(7, decomposition());
    crit!(8, r_example());
    crit!(9, dual());
    crit!(10, properties());
    if !all {
        std::process::exit(1);
    }
}
