mod common;

use common::{library_colorings, oracle_colorings, oracle_sweep};
use covercalc_core::diagram::{enumerate_colorings, BraidWord, ColoredBraid};
use proptest::prelude::*;

#[test]
fn trefoil_has_six_colorings() {
    let word = BraidWord::parse("strands=2 s1 s1 s1").unwrap();
    assert_eq!(enumerate_colorings(&word).len(), 6);
    assert_eq!(oracle_colorings(&word).len(), 6);
}

#[test]
fn figure_eight_has_none() {
    let word = BraidWord::parse("strands=3 s1 -s2 s1 -s2").unwrap();
    assert!(enumerate_colorings(&word).is_empty());
    assert!(oracle_colorings(&word).is_empty());
}

#[test]
fn exhaustive_small_words() {
    let (bad, words) = oracle_sweep(4, 5);
    assert!(words > 10_000);
    assert!(bad.is_empty(), "{bad:?}");
}

fn word_strategy() -> impl Strategy<Value = BraidWord> {
    (2usize..=6).prop_flat_map(|s| {
        prop::collection::vec((1..s, any::<bool>()), 0..=10).prop_map(move |ls| {
            let letters = ls
                .into_iter()
                .map(|(i, p)| if p { covercalc_core::diagram::Letter::pos(i) } else { covercalc_core::diagram::Letter::neg(i) })
                .collect();
            BraidWord::new(s, letters).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn agrees_with_oracle(word in word_strategy()) {
        prop_assert_eq!(library_colorings(&word), oracle_colorings(&word));
    }

    #[test]
    fn colorings_are_valid_and_roundtrip(word in word_strategy()) {
        for cb in enumerate_colorings(&word) {
            prop_assert!(cb.check_valid().is_ok());
            prop_assert!(cb.representation().transitive);
            prop_assert_eq!(cb.representation().image_order, 6);
            let back = ColoredBraid::from_file_str(&cb.to_file_string()).unwrap();
            prop_assert_eq!(back, cb);
        }
    }
}
