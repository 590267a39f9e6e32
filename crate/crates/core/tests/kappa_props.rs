use cyclokappa_core::arith::{gcd, is_prime};
use cyclokappa_core::kappa::{
    dual_kernel_check, kappa, kappa_prime_formula, kappa_twisted, lower_bound_witnesses, n_q, table1,
    weight2_dimension,
};

#[test]
fn primes_follow_closed_form() {
    for p in (5..=19).filter(|&p| is_prime(p)) {
        assert_eq!(Some(kappa(p).unwrap().kappa), kappa_prime_formula(p), "p={p}");
    }
}

#[test]
fn table_up_to_120() {
    for (&n, &want) in table1().range(..=120) {
        let r = kappa(n).unwrap();
        assert_eq!(r.kappa, want, "N={n}");
        assert_eq!(r.kappa as usize, r.codomain_dim - r.rank);
    }
}

#[test]
fn dual_pairs_up_to_60() {
    let ps: Vec<u64> = (2..31).filter(|&p| is_prime(p)).collect();
    let mut pairs = 0;
    for &p in &ps {
        for &q in &ps {
            if p == q || p * q > 60 {
                continue;
            }
            let r = dual_kernel_check(p, q).unwrap();
            assert!(r.agrees(), "({p},{q}): {r:?}");
            let w = lower_bound_witnesses(p, q).unwrap();
            assert!(w.ok(), "({p},{q}): {w:?}");
            assert_eq!(w.count as u64, n_q(p, q).unwrap() - 1);
            assert!(w.count as u64 <= r.kappa);
            pairs += 1;
        }
    }
    assert!(pairs > 20);
}

#[test]
fn galois_twist_up_to_40() {
    for n in 3..=40u64 {
        let base = kappa(n).unwrap().kappa;
        for a in (2..n).filter(|&a| gcd(a, n) == 1) {
            assert_eq!(kappa_twisted(n, a).unwrap(), base, "N={n} a={a}");
        }
    }
}

#[test]
fn weight2_dimension_rejects_small() {
    assert!(weight2_dimension(2, 0).is_err());
    let r = kappa(49).unwrap();
    assert_eq!(r.dim_y1, 21 + 1 - 1);
    assert_eq!(weight2_dimension(49, r.kappa).unwrap(), 21 * 21 + 42 + 1 - 35);
}
