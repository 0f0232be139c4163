//! Soundness of realization verdicts on generated graphs.

use gs_realize::cli_io::{gen_random_gs_graph, GenFlags};
use gs_realize::gs_model::LyapunovGraph;
use gs_realize::realize_global::{
    classify_graph, realize, search_assignment, search_assignment_filtered, verify_certificate,
    RealizationVerdict, SearchOutcome, TheoremId,
};
use gs_realize::branched::{family_a, family_b, family_minimal};
use gs_realize::cli_io::parse_graph;
use proptest::prelude::*;

fn check_sound(g: &LyapunovGraph, verdict: &RealizationVerdict) -> Result<(), TestCaseError> {
    match verdict {
        RealizationVerdict::RealizableBy { certificate, verified, .. } => {
            prop_assert!(classify_graph(g).is_gs);
            for (i, e) in g.edges.iter().enumerate() {
                let form = certificate.get(&i).expect("every edge is assigned");
                prop_assert_eq!(form.as_str().is_empty(), false);
                let m = gs_realize::branched::Branched1Manifold::parse(form.as_str()).unwrap();
                prop_assert_eq!(m.weight(), (vec![e.weight], e.weight));
            }
            if *verified {
                prop_assert_eq!(verify_certificate(g, certificate), Ok(true));
            }
        }
        RealizationVerdict::NotRealizable { witness, .. } => {
            prop_assert!(witness.vertices.iter().all(|v| g.vertices.contains_key(v)));
        }
        RealizationVerdict::Unknown { .. } => {}
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn realizable_verdicts_are_sound(seed in any::<u64>(), size in 2usize..12, minimal in any::<bool>()) {
        let g = gen_random_gs_graph(seed, size, GenFlags { minimal, fold_balanced: true }).unwrap();
        let verdict = realize(&g, None);
        check_sound(&g, &verdict)?;
        if minimal {
            let is_thm6 = matches!(verdict, RealizationVerdict::RealizableBy { theorem: TheoremId::Thm6, .. });
            prop_assert!(is_thm6);
        }
    }

    #[test]
    fn search_certificates_verify(seed in any::<u64>(), size in 2usize..6) {
        let g = gen_random_gs_graph(seed, size, GenFlags { minimal: false, fold_balanced: true }).unwrap();
        if g.edges.iter().all(|e| e.weight <= 3) {
            match search_assignment(&g, 3) {
                SearchOutcome::Found(cert) => prop_assert_eq!(verify_certificate(&g, &cert), Ok(true)),
                SearchOutcome::Exhausted(w) => prop_assert!(!w.vertices.is_empty()),
                SearchOutcome::BoundExceeded => prop_assert!(false, "all weights are within the bound"),
            }
        }
    }

    #[test]
    fn reversal_preserves_realizability(seed in any::<u64>(), size in 2usize..10) {
        let g = gen_random_gs_graph(seed, size, GenFlags { minimal: true, fold_balanced: true }).unwrap();
        let a = realize(&g, None).status();
        let b = realize(&g.reversed(), None).status();
        prop_assert_eq!(a, b);
    }
}

/// A graph with a weight-5 edge between a double-crossing saddle and a
/// regular saddle that no sufficient condition covers, realized only by
/// search with a form outside the named families.
const BEYOND_FAMILIES: &str = "gsgraph v1
vertex 0 D r
vertex 1 D sr
vertex 2 R s
vertex 3 W a
vertex 4 D sa
vertex 5 W s_s
vertex 6 R a
edge 0 1 3
edge 1 2 5
edge 2 3 2
edge 2 4 4
edge 4 5 2
edge 5 6 1
";

#[test]
fn search_realizes_graph_beyond_the_families() {
    let g = parse_graph(BEYOND_FAMILIES).unwrap();
    assert!(classify_graph(&g).is_gs);
    assert!(matches!(realize(&g, None), RealizationVerdict::Unknown { .. }));
    match realize(&g, Some(5)) {
        RealizationVerdict::RealizableBy {
            theorem: TheoremId::Search,
            certificate,
            verified: true,
        } => assert_eq!(verify_certificate(&g, &certificate), Ok(true)),
        other => panic!("{other:?}"),
    }
    let family_forms: Vec<_> = [family_a(5), family_b(5), family_minimal(5)]
        .into_iter()
        .map(|m| m.unwrap().canonical())
        .collect();
    let restricted = search_assignment_filtered(&g, 5, |i, f| {
        g.edges[i].weight != 5 || family_forms.contains(f)
    });
    assert!(matches!(restricted, SearchOutcome::Exhausted(_)));
}

#[test]
fn local_failure_is_reported_as_not_realizable() {
    let g = parse_graph(
        "gsgraph v1\nvertex 0 R r\nvertex 1 C s\nvertex 2 C s\nvertex 3 R a\nedge 0 1 1\nedge 1 2 2\nedge 1 2 2\nedge 2 3 1\n",
    )
    .unwrap();
    match realize(&g, None) {
        RealizationVerdict::NotRealizable { reason, .. } => assert!(reason.starts_with("local"), "{reason}"),
        other => panic!("{other:?}"),
    }
}
