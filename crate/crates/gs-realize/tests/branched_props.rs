//! Properties of branched 1-manifolds.

use gs_realize::branched::{
    enumerate_connected, family_a, family_b, family_minimal, identify_points, is_isomorphic,
    ArcPosition, Branched1Manifold, BranchedComponent,
};
use proptest::prelude::*;

/// A connected form of weight 2..=5 picked by index.
fn form(w: u32, pick: usize) -> Branched1Manifold {
    let forms = enumerate_connected(w).unwrap();
    Branched1Manifold::parse(forms[pick % forms.len()].as_str()).unwrap()
}

fn relabel(c: &BranchedComponent, perm: &[u32]) -> BranchedComponent {
    match c {
        BranchedComponent::Circle => BranchedComponent::Circle,
        BranchedComponent::Graph(g) => {
            let edges: Vec<(u32, u32)> = g
                .edges()
                .iter()
                .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
                .collect();
            BranchedComponent::from_edges(g.branch_points(), &edges).unwrap()
        }
    }
}

proptest! {
    #[test]
    fn canonical_form_ignores_relabelling(w in 2u32..=5, pick in 0usize..16, perm in Just((0u32..4).collect::<Vec<_>>()).prop_shuffle()) {
        let m = form(w, pick);
        let n = (w - 1) as usize;
        let perm: Vec<u32> = perm.into_iter().filter(|&p| (p as usize) < n).collect();
        let relabelled = Branched1Manifold::single(relabel(&m.components[0], &perm));
        prop_assert_eq!(relabelled.canonical(), m.canonical());
    }

    #[test]
    fn canonical_form_ignores_component_order(w1 in 1u32..=5, w2 in 1u32..=5, p1 in 0usize..16, p2 in 0usize..16) {
        let a = if w1 == 1 { Branched1Manifold::circle() } else { form(w1, p1) };
        let b = if w2 == 1 { Branched1Manifold::circle() } else { form(w2, p2) };
        let ab = a.clone().union(b.clone());
        let ba = b.union(a);
        prop_assert!(is_isomorphic(&ab, &ba));
        prop_assert_eq!(ab.weight().1, w1 + w2);
    }

    #[test]
    fn identification_conserves_weight(w1 in 1u32..=4, w2 in 1u32..=4, c1 in 0usize..2, c2 in 0usize..2, a1 in 0usize..16, a2 in 0usize..16, s in 0u32..2) {
        let m = family_a(w1).unwrap().union(family_b(w2).unwrap());
        let p1 = ArcPosition::new(c1, a1 % m.components[c1].arc_count(), 0);
        let p2 = ArcPosition::new(c2, a2 % m.components[c2].arc_count(), s + 1);
        let next = identify_points(&m, p1, p2).unwrap();
        if c1 == c2 {
            prop_assert_eq!(next.weight().1, w1 + w2 + 1);
            prop_assert_eq!(next.components.len(), 2);
        } else {
            prop_assert_eq!(next.weight().1, w1 + w2);
            prop_assert_eq!(next.components.len(), 1);
        }
    }

    #[test]
    fn canonical_text_roundtrips(w in 1u32..=5, pick in 0usize..16) {
        let m = if w == 1 { Branched1Manifold::circle() } else { form(w, pick) };
        let text = m.canonical();
        let back = Branched1Manifold::parse(text.as_str()).unwrap();
        prop_assert_eq!(back.canonical(), text);
    }
}

#[test]
fn family_members_are_connected_with_the_requested_weight() {
    for w in 1..=10 {
        let minimal = family_minimal(w).ok();
        assert_eq!(minimal.is_some(), [1, 2, 3, 5, 7].contains(&w), "family minimal({w})");
        let members = [("a", family_a(w).ok()), ("b", family_b(w).ok()), ("minimal", minimal)];
        for (name, m) in members.into_iter().filter_map(|(n, m)| m.map(|m| (n, m))) {
            assert_eq!(m.components.len(), 1, "family {name}({w})");
            assert_eq!(m.weight(), (vec![w], w), "family {name}({w})");
        }
    }
}
