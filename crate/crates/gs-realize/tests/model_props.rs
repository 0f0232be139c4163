//! Properties of the Lyapunov graph model.

use gs_realize::cli_io::{gen_random_gs_graph, GenFlags};
use gs_realize::gs_model::{
    euler_gs, fold_balance, ph_residual, reverse_nature, semigraph, Nature, SemiGraph,
    SingularityType, VertexLabel,
};
use proptest::prelude::*;

fn any_label() -> impl Strategy<Value = VertexLabel> {
    proptest::sample::select(VertexLabel::all())
}

fn weights() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1u32..=12, 0..5)
}

proptest! {
    #[test]
    fn residual_is_antisymmetric_under_reversal(label in any_label(), ins in weights(), outs in weights()) {
        let sg = SemiGraph::new(label, ins, outs);
        prop_assert_eq!(ph_residual(&sg.reversed()), -ph_residual(&sg));
    }

    #[test]
    fn semigraph_reversal_is_an_involution(label in any_label(), ins in weights(), outs in weights()) {
        let sg = SemiGraph::new(label, ins, outs);
        prop_assert_eq!(sg.reversed().reversed(), sg);
    }

    #[test]
    fn balanced_graphs_have_even_whitney_count(seed in any::<u64>(), size in 2usize..14, minimal in any::<bool>()) {
        let g = gen_random_gs_graph(seed, size, GenFlags { minimal, fold_balanced: true }).unwrap();
        prop_assert!(fold_balance(&g).unwrap());
        let w = g.vertices.values().filter(|l| l.ty == SingularityType::W).count();
        let t = g.vertices.values().filter(|l| l.ty == SingularityType::T).count();
        prop_assert_eq!((w + 2 * t) % 2, 0);
        prop_assert!(euler_gs(&g).unwrap().is_integer());
    }

    #[test]
    fn graph_reversal_reverses_every_semigraph(seed in any::<u64>(), size in 2usize..12) {
        let g = gen_random_gs_graph(seed, size, GenFlags::default()).unwrap();
        let r = g.reversed();
        for &v in g.vertices.keys() {
            let mut a = semigraph(&g, v).unwrap().reversed();
            let mut b = semigraph(&r, v).unwrap();
            a.in_weights.sort_unstable();
            a.out_weights.sort_unstable();
            b.in_weights.sort_unstable();
            b.out_weights.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn nature_reversal_is_an_involution_preserving_admissibility() {
    for n in Nature::ALL {
        assert_eq!(reverse_nature(reverse_nature(n)), n);
    }
    for l in VertexLabel::all() {
        assert!(l.reversed().is_admissible());
        assert_eq!(l.reversed().reversed(), l);
    }
}
