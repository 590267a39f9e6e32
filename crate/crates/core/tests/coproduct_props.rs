use num_traits::One;
use proptest::prelude::*;

use cyclokappa_core::coproduct::{
    coproduct_left_iterate, coproduct_right_iterate, goncharov_coproduct, IIWord, Letter, SymbolMonomial,
};
use cyclokappa_core::cyclotomic::UnityRoot;

fn letter(n: u64) -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::Zero), (0..n).prop_map(|k| Letter::Root(UnityRoot(k)))]
}

fn word(n: u64, max_weight: usize) -> impl Strategy<Value = IIWord> {
    (letter(n), prop::collection::vec(letter(n), 0..=max_weight), letter(n))
        .prop_map(|(a, m, b)| IIWord::new(a, m, b))
}

fn all_words(n: u64, weight: usize) -> Vec<IIWord> {
    let ls: Vec<Letter> = std::iter::once(Letter::Zero).chain((0..n).map(|k| Letter::Root(UnityRoot(k)))).collect();
    let total = ls.len().pow(weight as u32 + 2);
    (0..total)
        .map(|mut code| {
            let mut pick = || {
                let l = ls[code % ls.len()];
                code /= ls.len();
                l
            };
            let a = pick();
            let m = (0..weight).map(|_| pick()).collect();
            IIWord::new(a, m, pick())
        })
        .collect()
}

#[test]
fn coassociative_exhaustive_mu4() {
    for w in 0..=3 {
        for word in all_words(4, w) {
            assert_eq!(coproduct_left_iterate(&word), coproduct_right_iterate(&word), "{word}");
        }
    }
}

proptest! {
    #[test]
    fn coassociative_random_mu8(w in word(8, 5)) {
        prop_assert_eq!(coproduct_left_iterate(&w), coproduct_right_iterate(&w));
    }

    #[test]
    fn counit(w in word(6, 5)) {
        prop_assume!(w.depth() >= 1);
        let d = goncharov_coproduct(&w);
        prop_assert!(d.coeff(&SymbolMonomial::one(), &w).is_one());
        let unit = IIWord::new(w.a0, vec![], w.end);
        prop_assert!(d.coeff(&SymbolMonomial::from_word(&w).unwrap(), &unit).is_one());
    }

    #[test]
    fn weight_and_depth_split(w in word(6, 6)) {
        for (left, right) in goncharov_coproduct(&w).terms.keys() {
            prop_assert_eq!(left.weight() + right.weight(), w.weight());
            prop_assert_eq!(left.depth() + right.depth(), w.depth());
        }
    }
}
