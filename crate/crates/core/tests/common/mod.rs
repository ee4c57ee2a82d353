//! Test oracles shared by the integration suites and the acceptance runner.
#![allow(dead_code)]

use covercalc_core::diagram::{enumerate_colorings, BraidWord, ColoredBraid, Letter};
use covercalc_core::rewrite::{apply_move, braid_equal, normalize, replay, audit_log, FlipSite, LinkState, Move, Variant};
use rand::Rng;

/// Transpositions of `{0, 1, 2}` as point pairs: R, Y, B.
const TRANSPOSITIONS: [(u8, u8); 3] = [(0, 1), (1, 2), (0, 2)];
const NAMES: [char; 3] = ['R', 'Y', 'B'];

fn apply(t: (u8, u8), x: u8) -> u8 {
    if x == t.0 {
        t.1
    } else if x == t.1 {
        t.0
    } else {
        x
    }
}

/// Conjugate of `under` by `over`, computed on points.
fn conjugate(over: usize, under: usize) -> usize {
    let t = TRANSPOSITIONS[over];
    let (a, b) = TRANSPOSITIONS[under];
    let (x, y) = (apply(t, a), apply(t, b));
    let pair = (x.min(y), x.max(y));
    TRANSPOSITIONS.iter().position(|&p| p == pair).expect("conjugate of a transposition")
}

/// Brute-force filter over all `3^s` labelings: Wirtinger rule at every
/// crossing, closure, and a transitive image (checked by orbit growth).
pub fn oracle_colorings(word: &BraidWord) -> Vec<String> {
    let s = word.strands();
    let mut out = Vec::new();
    for code in 0..3usize.pow(s as u32) {
        let top: Vec<usize> = (0..s).map(|i| (code / 3usize.pow((s - 1 - i) as u32)) % 3).collect();
        let mut arcs = top.clone();
        let mut seen = top.clone();
        for l in word.letters() {
            let p = l.index - 1;
            let (o, u) = if l.positive { (p, p + 1) } else { (p + 1, p) };
            let out_color = conjugate(arcs[o], arcs[u]);
            let over = arcs[o];
            arcs[u] = out_color;
            arcs.swap(p, p + 1);
            arcs[if l.positive { p + 1 } else { p }] = over;
            seen.push(out_color);
        }
        if arcs != top {
            continue;
        }
        let mut orbit = vec![0u8];
        let mut grew = true;
        while grew {
            grew = false;
            for &c in &seen {
                for k in 0..orbit.len() {
                    let y = apply(TRANSPOSITIONS[c], orbit[k]);
                    if !orbit.contains(&y) {
                        orbit.push(y);
                        grew = true;
                    }
                }
            }
        }
        if orbit.len() == 3 {
            out.push(top.iter().map(|&c| NAMES[c]).collect());
        }
    }
    out
}

pub fn library_colorings(word: &BraidWord) -> Vec<String> {
    enumerate_colorings(word)
        .iter()
        .map(|cb| cb.top_colors().iter().map(|c| c.as_char()).collect())
        .collect()
}

/// Every word on `s` strands of length exactly `len`.
pub fn all_words(s: usize, len: usize) -> impl Iterator<Item = BraidWord> {
    let gens: Vec<Letter> = (1..s).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect();
    let count = if gens.is_empty() { usize::from(len == 0) } else { gens.len().pow(len as u32) };
    (0..count).map(move |mut code| {
        let letters = (0..len)
            .map(|_| {
                let l = gens[code % gens.len()];
                code /= gens.len();
                l
            })
            .collect();
        BraidWord::new(s, letters).expect("indices in range")
    })
}

/// Mismatching words in the exhaustive sweep, and the number of words seen.
pub fn oracle_sweep(max_strands: usize, max_len: usize) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let mut words = 0;
    for s in 1..=max_strands {
        for len in 0..=max_len {
            for word in all_words(s, len) {
                words += 1;
                if oracle_colorings(&word) != library_colorings(&word) {
                    bad.push(word.to_string());
                }
            }
        }
    }
    (bad, words)
}

/// A random transitive colored braid on 2..=5 strands with 1..=8 letters.
pub fn random_colored<R: Rng>(rng: &mut R) -> ColoredBraid {
    loop {
        let s = rng.gen_range(2..=5);
        let len = rng.gen_range(1..=8);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..s);
                if rng.gen_bool(0.5) {
                    Letter::pos(i)
                } else {
                    Letter::neg(i)
                }
            })
            .collect();
        let word = BraidWord::new(s, letters).expect("indices in range");
        let mut colorings = enumerate_colorings(&word);
        if !colorings.is_empty() {
            let k = rng.gen_range(0..colorings.len());
            return colorings.swap_remove(k);
        }
    }
}

fn preserved(before: &ColoredBraid, after: &ColoredBraid) -> Result<(), String> {
    after.check_valid().map_err(|e| format!("invalid coloring: {e}"))?;
    if !after.representation().transitive {
        return Err("lost transitivity".into());
    }
    if after.top_colors() != before.top_colors() {
        return Err("boundary colors changed".into());
    }
    Ok(())
}

/// Runs every applicable braid move on `cb`, then the full normalization,
/// and reports the first broken invariant.
pub fn check_rewriting(cb: &ColoredBraid) -> Result<(), String> {
    let state = LinkState::new(cb.clone());
    for index in 0..cb.len() {
        if let Ok(applied) = apply_move(&state, Move::Flip(FlipSite::single(index))) {
            preserved(cb, &applied.state.braid)?;
            let back = applied.inverse_site.ok_or("flip without inverse site")?;
            let undone = apply_move(&applied.state, Move::Flip(back)).map_err(|e| format!("inverse flip: {e}"))?;
            if undone.state.braid != *cb {
                return Err(format!("flip at {index} is not undone by its inverse site"));
            }
        }
        if let Ok(applied) = apply_move(&state, Move::Slide { index }) {
            let after = &applied.state.braid;
            preserved(cb, after)?;
            if !braid_equal(cb.strands(), cb.word().letters(), after.word().letters()) {
                return Err(format!("slide at {index} is not an isotopy"));
            }
        }
    }
    let out = normalize(cb, Variant::Borromean).map_err(|e| format!("normalize: {e}"))?;
    if !out.state.horizontal_crossings().is_empty() {
        return Err("horizontal crossings left after standardization".into());
    }
    audit_log(&out.log).map_err(|e| format!("audit: {e}"))?;
    let replayed = replay(&out.input, &out.log).map_err(|e| format!("replay: {e}"))?;
    if replayed != out.state {
        return Err("replay does not reproduce the final state".into());
    }
    out.link.check().map_err(|e| format!("standard link: {e}"))?;
    Ok(())
}
