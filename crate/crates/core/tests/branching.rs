use covercalc_core::permcalc::{
    boundary_is_k_cycle, compose_branching, dihedral_rep, euler_char_disk_cover, quotient_by_rotation,
    regular_representation, sigma3_elements, torus_modification, BranchComponent, BranchInventory, BranchingType,
    ComponentTag, Orbit,
};
use proptest::prelude::*;

fn branching() -> impl Strategy<Value = BranchingType> {
    prop::collection::vec(1u32..=6, 1..=6).prop_map(BranchingType::new)
}

#[test]
fn dihedral_suite() {
    for k in 2..=50 {
        let rep = dihedral_rep(k).unwrap();
        for rho in [rep.rho_x(), rep.rho_y()] {
            assert!(rho.is_involution());
            assert!(rho.cycle_type().iter().all(|&l| l <= 2));
        }
        assert!(boundary_is_k_cycle(&rep), "k={k}");
        assert_eq!(rep.boundary_monodromy().cycle_type(), vec![k]);
        assert_eq!(euler_char_disk_cover(&rep), 1, "k={k}");
        assert!(rep.is_transitive());
    }
}

#[test]
fn regular_representation_suite() {
    for g in sigma3_elements() {
        let eta_g = regular_representation(&g).unwrap();
        if !g.is_identity() {
            assert!(eta_g.is_fixed_point_free());
        }
        if g.is_involution() && !g.is_identity() {
            assert_eq!(eta_g.cycle_type(), vec![2, 2, 2]);
        }
        for h in sigma3_elements() {
            let eta_h = regular_representation(&h).unwrap();
            assert_eq!(regular_representation(&g.then(&h)).unwrap(), eta_g.then(&eta_h));
        }
    }
}

proptest! {
    #[test]
    fn compose_is_multiplicative(t in branching(), a in 1u32..=5, b in 1u32..=5) {
        prop_assert_eq!(compose_branching(&compose_branching(&t, a), b), compose_branching(&t, a * b));
        prop_assert_eq!(compose_branching(&t, a).total(), t.total() * u64::from(a));
        prop_assert_eq!(compose_branching(&t, 1), t);
    }

    #[test]
    fn type_text_roundtrip(t in branching()) {
        prop_assert_eq!(t.to_string().parse::<BranchingType>().unwrap(), t);
    }

    #[test]
    fn quotient_and_repair_conserve_degree(order in 2u32..=9, extra in 0usize..=3) {
        let mut inv = BranchInventory::new(3);
        let mut orbits = Vec::new();
        for j in 0..extra {
            let label = format!("L{j}");
            inv.push(BranchComponent::new(label.clone(), BranchingType::new([1, 2]), &[ComponentTag::Horizontal])).unwrap();
            orbits.push(Orbit::new(std::slice::from_ref(&label), format!("q.{label}")));
        }
        let members: Vec<String> = (0..order).map(|v| format!("V{v}")).collect();
        for m in &members {
            inv.push(BranchComponent::new(m.clone(), BranchingType::new([1, 2]), &[ComponentTag::Vertical])).unwrap();
        }
        orbits.push(Orbit::new(&members, "q.V"));
        let q = quotient_by_rotation(&inv, order, &orbits, "axis").unwrap();
        prop_assert_eq!(q.degree, 3 * u64::from(order));
        prop_assert!(q.check_degrees().is_ok());
        let repaired = torus_modification(&q, "axis", order).unwrap();
        prop_assert!(repaired.check_degrees().is_ok());
        prop_assert_eq!(repaired.len(), q.len() + 1);
        prop_assert!(repaired.max_local_degree() <= 2);
        let text = repaired.to_text();
        prop_assert_eq!(BranchInventory::from_text(&text).unwrap(), repaired);
    }
}
