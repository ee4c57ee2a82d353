use covercalc_core::diagram::{enumerate_colorings, propagate_coloring, BraidWord, Color, Letter};
use proptest::prelude::*;

fn letters(s: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..s, any::<bool>()), 0..=8)
        .prop_map(|ls| ls.into_iter().map(|(i, p)| if p { Letter::pos(i) } else { Letter::neg(i) }).collect())
}

/// Component structure: the multiset of cycle lengths of the closure.
fn shape(word: &BraidWord) -> Vec<usize> {
    let mut lens: Vec<usize> = word.closure_components().iter().map(Vec::len).collect();
    lens.sort_unstable();
    lens
}

/// Applies a braid relation (or a cancellation, or a conjugation) at `at`.
fn equivalent(s: usize, mut w: Vec<Letter>, at: usize, kind: u8, i: usize) -> Vec<Letter> {
    let at = at.min(w.len());
    match kind % 4 {
        0 => {
            w.splice(at..at, [Letter::pos(i), Letter::neg(i)]);
        }
        1 if i + 1 < s => {
            let relator = [
                Letter::pos(i),
                Letter::pos(i + 1),
                Letter::pos(i),
                Letter::neg(i + 1),
                Letter::neg(i),
                Letter::neg(i + 1),
            ];
            w.splice(at..at, relator);
        }
        2 if !w.is_empty() => {
            let k = at % w.len();
            w.rotate_left(k);
        }
        _ => {
            w.insert(0, Letter::pos(i));
            w.push(Letter::neg(i));
        }
    }
    w
}

proptest! {
    #[test]
    fn closure_components_respect_braid_relations(
        (s, w) in (2usize..=6).prop_flat_map(|s| (Just(s), letters(s))),
        at in 0usize..10,
        kind in any::<u8>(),
        i in 1usize..5,
    ) {
        let i = 1 + (i - 1) % (s - 1);
        let a = BraidWord::new(s, w.clone()).unwrap();
        let b = BraidWord::new(s, equivalent(s, w, at, kind, i)).unwrap();
        prop_assert_eq!(shape(&a), shape(&b));
    }

    #[test]
    fn propagation_is_deterministic((s, w) in (2usize..=5).prop_flat_map(|s| (Just(s), letters(s))), seed in any::<u64>()) {
        let word = BraidWord::new(s, w).unwrap();
        let top: Vec<Color> = (0..s).map(|k| Color::ALL[((seed >> (2 * k)) % 3) as usize]).collect();
        let a = propagate_coloring(&word, &top);
        let b = propagate_coloring(&word, &top);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn wirtinger_at_every_crossing((s, w) in (2usize..=5).prop_flat_map(|s| (Just(s), letters(s)))) {
        let word = BraidWord::new(s, w).unwrap();
        for cb in enumerate_colorings(&word) {
            for c in cb.crossings() {
                let colors = [c.over, c.under_in, c.under_out];
                let all_equal = colors.iter().all(|&x| x == c.over);
                let distinct = colors[0] != colors[1] && colors[1] != colors[2] && colors[0] != colors[2];
                prop_assert!(all_equal || distinct);
            }
        }
    }
}

#[test]
fn conjugation_closure() {
    for o in Color::ALL {
        assert_eq!(Color::conj(o, o), o);
        for u in Color::ALL {
            let c = Color::conj(o, u);
            let product = o.transposition().then(&u.transposition()).then(&o.transposition());
            assert_eq!(Color::from_transposition(&product), Some(c));
        }
    }
}
