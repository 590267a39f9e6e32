use std::collections::BTreeSet;

use cyclokappa_core::cyclotomic::{make_level, GaloisElement, GroupAlgebraElement, Level, UnityRoot};
use cyclokappa_core::exactlinalg::{Field, PrimeField};
use proptest::prelude::*;

const SPECIAL: [u64; 8] = [8, 16, 32, 64, 9, 27, 81, 243];

fn level(i: usize) -> Level {
    make_level(SPECIAL[i % SPECIAL.len()]).unwrap()
}

#[test]
fn lambda_counts_match_enumeration() {
    for n in SPECIAL {
        let lv = make_level(n).unwrap();
        let sf = lv.special().unwrap();
        let nu = lv.nu_elements().unwrap();
        let both: BTreeSet<UnityRoot> = nu.iter().flat_map(|&e| [e, lv.inv(e)]).collect();
        for x in lv.mu(n / sf.q).into_iter().filter(|x| x.0 != 0) {
            let v = lv.valuation(x).unwrap();
            let k = sf.p.pow(v) as i64;
            let brute = both.iter().filter(|&&e| lv.pow(e, k) == x).count();
            let got = lv.lambda_set(1, x).unwrap().len() + lv.lambda_set(-1, x).unwrap().len();
            assert_eq!(got, brute, "N={n} x={x:?}");
        }
    }
}

#[test]
fn nu_orbits_under_subgroups() {
    for n in SPECIAL {
        let lv = make_level(n).unwrap();
        let sf = lv.special().unwrap();
        let nu: BTreeSet<UnityRoot> = lv.nu_elements().unwrap().into_iter().collect();
        for g in lv.galois_group().unwrap() {
            let img: BTreeSet<UnityRoot> = nu.iter().map(|&e| lv.act(g, e)).collect();
            assert_eq!(img, nu);
        }
        for m in 0..=sf.m {
            let u = lv.subgroup_u(m).unwrap();
            let gm = lv.galois_subgroup(m).unwrap();
            assert_eq!(gm.len() as u64, sf.p.pow(m));
            for &e in nu.iter().step_by(5) {
                let a: BTreeSet<UnityRoot> = u.iter().map(|&eta| lv.mul(eta, e)).collect();
                let b: BTreeSet<UnityRoot> = gm.iter().map(|&s| lv.act(s, e)).collect();
                assert_eq!(a, b, "N={n} n={m}");
            }
        }
    }
}

proptest! {
    #[test]
    fn galois_action_composes(i in 0usize..8, a in 0usize..1000, b in 0usize..1000, x in 0u64..1000) {
        let lv = level(i);
        let g = lv.galois_group().unwrap();
        let (sa, sb) = (g[a % g.len()], g[b % g.len()]);
        let x = UnityRoot(x % lv.n());
        prop_assert_eq!(lv.act(sa, lv.act(sb, x)), lv.act(lv.compose(sa, sb), x));
    }

    #[test]
    fn augmentation_is_multiplicative(
        i in 0usize..8,
        ta in prop::collection::vec((0usize..500, 0u64..101), 0..6),
        tb in prop::collection::vec((0usize..500, 0u64..101), 0..6),
    ) {
        let lv = level(i);
        let g = lv.galois_group().unwrap();
        let f = PrimeField::new(101).unwrap();
        let mk = |t: &[(usize, u64)]| {
            GroupAlgebraElement::new(f, lv.n(), t.iter().map(|&(k, c)| (GaloisElement(g[k % g.len()].0), c)))
        };
        let (x, y) = (mk(&ta), mk(&tb));
        prop_assert_eq!(x.mul(&y).augmentation(), f.mul(&x.augmentation(), &y.augmentation()));
    }
}
