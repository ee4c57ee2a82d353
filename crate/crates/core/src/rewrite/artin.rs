//! Braid equality through the Artin action on the free group.
//!
//! The action is faithful, so two braid words are equal in the braid group
//! exactly when they induce the same automorphism of `F(x_1, ..., x_s)`.

use crate::diagram::Letter;

/// Reduced free-group word; `j` stands for `x_j` and `-j` for its inverse.
pub type FreeWord = Vec<i32>;

fn push_reduced(word: &mut FreeWord, g: i32) {
    if word.last() == Some(&-g) {
        word.pop();
    } else {
        word.push(g);
    }
}

fn inverse(word: &[i32]) -> FreeWord {
    word.iter().rev().map(|g| -g).collect()
}

fn generator_image(letter: Letter, g: i32) -> FreeWord {
    let i = letter.index as i32;
    let t = g.abs();
    let image = if letter.positive {
        if t == i {
            vec![i, i + 1, -i]
        } else if t == i + 1 {
            vec![i]
        } else {
            vec![t]
        }
    } else if t == i {
        vec![i + 1]
    } else if t == i + 1 {
        vec![-(i + 1), i, i + 1]
    } else {
        vec![t]
    };
    if g > 0 {
        image
    } else {
        inverse(&image)
    }
}

/// Images of `x_1, ..., x_s` under the automorphism of the braid word.
pub fn braid_action(strands: usize, letters: &[Letter]) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (1..=strands as i32).map(|j| vec![j]).collect();
    for &letter in letters {
        for img in images.iter_mut() {
            let mut next = FreeWord::with_capacity(img.len() + 2);
            for &g in img.iter() {
                for h in generator_image(letter, g) {
                    push_reduced(&mut next, h);
                }
            }
            *img = next;
        }
    }
    images
}

pub fn braid_equal(strands: usize, a: &[Letter], b: &[Letter]) -> bool {
    braid_action(strands, a) == braid_action(strands, b)
}
