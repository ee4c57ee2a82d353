//! The regular representation of Σ₃ and the double cover it induces.

use serde::{Deserialize, Serialize};

use super::branching::{BranchComponent, BranchInventory, BranchingType, ComponentTag};
use super::perm::Perm;
use super::PermError;

/// Σ₃ in the fixed order `e, (1 2), (2 3), (1 3), (1 2 3), (1 3 2)`; position
/// `i` in this list is point `i + 1` of the regular representation.
pub fn sigma3_elements() -> [Perm; 6] {
    ["()", "(1 2)", "(2 3)", "(1 3)", "(1 2 3)", "(1 3 2)"]
        .map(|c| Perm::parse(c, 3).expect("valid cycle literal"))
}

/// The regular action of `g ∈ Σ₃` on the six elements of Σ₃.
///
/// With products read left to right, `x ↦ x·g` is the action that makes
/// `g ↦ η(g)` a homomorphism: `η(g).then(η(h)) = η(g.then(h))`.
pub fn regular_representation(g: &Perm) -> Result<Perm, PermError> {
    if g.degree() != 3 {
        return Err(PermError::NotDegreeThree(g.degree()));
    }
    let elems = sigma3_elements();
    let images: Vec<usize> = elems
        .iter()
        .map(|x| {
            let y = x.then(g);
            elems.iter().position(|e| *e == y).expect("Σ₃ is closed") + 1
        })
        .collect();
    Perm::from_images(&images)
}

/// The sign homomorphism Σ₃ → {±1}; its kernel A₃ has index 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignDatum {
    /// `(element, sign)` for every element of Σ₃, in [`sigma3_elements`] order.
    pub values: Vec<(String, i8)>,
    pub kernel: Vec<String>,
    pub kernel_index: usize,
}

impl SignDatum {
    pub fn sigma3() -> Self {
        let elems = sigma3_elements();
        let values: Vec<(String, i8)> = elems.iter().map(|e| (e.to_string(), e.sign())).collect();
        let kernel: Vec<String> = values
            .iter()
            .filter(|(_, s)| *s == 1)
            .map(|(e, _)| e.clone())
            .collect();
        let kernel_index = elems.len() / kernel.len();
        SignDatum {
            values,
            kernel,
            kernel_index,
        }
    }
}

/// The 2-fold cover `u` defined by the sign of the monodromy.
///
/// Over a branch component the meridian lifts to an odd element, over a pseudo
/// component to an even one, so `u` branches exactly over the pseudo
/// components with type `{2}`.
pub fn pseudo_branch_double_cover(
    inventory: &BranchInventory,
) -> Result<(SignDatum, BranchInventory), PermError> {
    let tagged = inventory
        .components()
        .iter()
        .any(|c| c.has_tag(ComponentTag::Branch) || c.has_tag(ComponentTag::Pseudo));
    if !tagged {
        return Err(PermError::NoBranchTags);
    }
    let mut out = BranchInventory::new(2);
    for c in inventory.components() {
        if c.has_tag(ComponentTag::Pseudo) {
            out.push(BranchComponent::new(
                c.label.clone(),
                BranchingType::uniform(2, 1),
                &[ComponentTag::Pseudo],
            ))?;
        }
    }
    Ok((SignDatum::sigma3(), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_is_triple_transposition() {
        let t = Perm::parse("(1 2)", 3).unwrap();
        let eta = regular_representation(&t).unwrap();
        assert_eq!(eta.cycle_type(), vec![2, 2, 2]);
        assert!(eta.is_fixed_point_free());
    }

    #[test]
    fn identity_and_three_cycle() {
        assert!(regular_representation(&Perm::identity(3)).unwrap().is_identity());
        let c = Perm::parse("(1 2 3)", 3).unwrap();
        assert_eq!(regular_representation(&c).unwrap().cycle_type(), vec![3, 3]);
    }

    #[test]
    fn homomorphism_on_all_pairs() {
        for g in sigma3_elements() {
            for h in sigma3_elements() {
                let lhs = regular_representation(&g.then(&h)).unwrap();
                let rhs = regular_representation(&g)
                    .unwrap()
                    .then(&regular_representation(&h).unwrap());
                assert_eq!(lhs, rhs, "g={g} h={h}");
            }
        }
    }

    #[test]
    fn rejects_wrong_degree() {
        assert!(matches!(
            regular_representation(&Perm::identity(4)),
            Err(PermError::NotDegreeThree(4))
        ));
    }

    #[test]
    fn sign_datum() {
        let d = SignDatum::sigma3();
        assert_eq!(d.kernel_index, 2);
        assert_eq!(d.kernel.len(), 3);
        assert_eq!(d.values[1], ("(1 2)".to_string(), -1));
    }

    #[test]
    fn double_cover_branches_over_pseudo_only() {
        let mut inv = BranchInventory::new(27);
        for j in 0..3 {
            inv.push(BranchComponent::new(format!("b{j}"), BranchingType::uniform(1, 27), &[ComponentTag::Branch]))
                .unwrap();
            inv.push(BranchComponent::new(format!("p{j}"), BranchingType::uniform(1, 27), &[ComponentTag::Pseudo]))
                .unwrap();
        }
        let (_, u) = pseudo_branch_double_cover(&inv).unwrap();
        let labels: Vec<&str> = u.components().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["p0", "p1", "p2"]);
        u.check_degrees().unwrap();

        let mut plain = BranchInventory::new(3);
        plain.push(BranchComponent::new("b", BranchingType::uniform(1, 3), &[ComponentTag::Branch]))
            .unwrap();
        assert!(pseudo_branch_double_cover(&plain).unwrap().1.is_empty());
        let untagged = BranchInventory::new(3);
        assert!(matches!(pseudo_branch_double_cover(&untagged), Err(PermError::NoBranchTags)));
    }
}
