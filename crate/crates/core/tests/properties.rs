mod common;

use obslab::canon::{are_isomorphic, canonical_form};
use obslab::detectors::{
    find_clique, find_clique_or_stable, find_even_hole, find_hole, find_stable_set, is_chordal, RamseyOutcome, SearchLimits,
};
use obslab::extractors::{clear_crystal, phantom_to_crystal, Outcome};
use obslab::generators::{k_tree_random, plant_crystal, plant_phantom, CrystalNoise, Density};
use obslab::io::{graph_from_edgelist, graph_from_json, graph_to_edgelist, graph_to_json, td_from_pace, td_to_pace};
use obslab::structures::contraption;
use obslab::treewidth::{tw_lower, tw_upper, treewidth_exact, verify_decomposition};
use obslab::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn wide() -> SearchLimits {
    SearchLimits::new(1 << 20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn json_and_edgelist_round_trip(g in graph(14)) {
        prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(graph_from_edgelist(&graph_to_edgelist(&g)).unwrap(), g);
    }

    #[test]
    fn treewidth_matches_oracle_and_bounds(g in graph(9)) {
        let (w, td) = treewidth_exact(&g).unwrap();
        prop_assert_eq!(w, common::treewidth(&g));
        prop_assert!(tw_lower(&g) <= w);
        prop_assert!(w <= tw_upper(&g).0);
        prop_assert!(common::is_tree_decomposition(&g, &td));
        prop_assert!(verify_decomposition(&g, &td).is_valid());
    }

    #[test]
    fn pace_round_trip(g in graph(10)) {
        let (_, td) = tw_upper(&g);
        let (back, n) = td_from_pace(&td_to_pace(&td, g.n())).unwrap();
        prop_assert_eq!(n, g.n());
        prop_assert!(common::is_tree_decomposition(&g, &back));
    }

    #[test]
    fn hole_detectors_agree_with_oracle(g in graph(9)) {
        let hole = find_hole(&g);
        prop_assert_eq!(hole.is_some(), !is_chordal(&g));
        if let Some(w) = hole {
            prop_assert!(common::is_hole(&g, &w.paths[0]));
        }
        let even = find_even_hole(&g, &wide()).unwrap();
        prop_assert_eq!(even.is_some(), common::has_even_hole(&g));
        if let Some(w) = even {
            prop_assert!(common::is_hole(&g, &w.paths[0]) && w.paths[0].len() % 2 == 0);
        }
    }

    #[test]
    fn cliques_are_stable_sets_of_the_complement(g in graph(11), c in 1usize..5) {
        let clique = find_clique(&g, c, &wide()).unwrap();
        let stable = find_stable_set(&g.complement(), c, &wide()).unwrap();
        prop_assert_eq!(clique.is_some(), stable.is_some());
        if let Some(w) = clique {
            prop_assert!(w.vertices.len() == c && common::is_clique(&g, &w.vertices));
        }
    }

    #[test]
    fn ramsey_never_misses_above_the_bound(g in graph(12), c in 2usize..4, s in 2usize..4) {
        match find_clique_or_stable(&g, c, s, &wide()).unwrap() {
            RamseyOutcome::Clique(vs) => prop_assert!(vs.len() == c && common::is_clique(&g, &vs)),
            RamseyOutcome::Stable(vs) => prop_assert!(vs.len() == s && common::is_stable(&g, &vs)),
            RamseyOutcome::Neither => prop_assert!(g.n() < c.pow(s as u32)),
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut obslab::generators::rng(seed));
        let h = Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert_eq!(canonical_form(&g).certificate, canonical_form(&h).certificate);
        prop_assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn contraption_matches_reference(g in graph(10), pick in any::<usize>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (a, b) = edges[pick % edges.len()];
        let c = contraption(&g, a, b).unwrap();
        let got: std::collections::BTreeSet<_> = c.graph.edges().into_iter().collect();
        prop_assert_eq!(got, common::contraption_edges(&g, a, b));
        prop_assert_eq!(c.merged, g.n() - 2);
    }

    #[test]
    fn k_trees_have_width_k(k in 1usize..4, extra in 0usize..6, seed in any::<u64>()) {
        let g = k_tree_random(k, k + 1 + extra, seed).unwrap();
        prop_assert_eq!(g.m(), k * (k - 1) / 2 + (g.n() - k) * k);
        prop_assert_eq!(treewidth_exact(&g).unwrap().0, k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phantom_extraction_is_sound_and_replays(f in 1usize..3, gs in 1usize..3, r in 1usize..3, seed in any::<u64>(), coned in any::<bool>()) {
        let density = if coned { Density::Coned { seed } } else { Density::Minimal };
        let Ok((g, p)) = plant_phantom(&obslab::generators::complete(2), f + gs, r, density) else {
            return Ok(());
        };
        let ex = phantom_to_crystal(&g, &p, f, gs, None).unwrap();
        let again = phantom_to_crystal(&g, &p, f, gs, Some(&ex.trace)).unwrap();
        prop_assert_eq!(&again, &ex);
        match &ex.outcome {
            Outcome::Crystal(c) => {
                prop_assert!(common::is_crystal(&g, c));
                prop_assert_eq!((c.f(), c.g()), (f, gs));
            }
            Outcome::CliqueFamily(fam) => prop_assert!(fam.iter().all(|k| common::is_clique(&g, k))),
            Outcome::HypothesisViolation(_) => {}
            other => prop_assert!(false, "unexpected outcome {}", other.variant()),
        }
    }

    #[test]
    fn clearing_keeps_a_crystal_clear(f in 1usize..4, gs in 1usize..4, noise in 0usize..6, seed in any::<u64>()) {
        let noise = (noise > 0).then_some(CrystalNoise { seed, edges: noise });
        let (g, c) = plant_crystal(f + 1, gs + 1, noise).unwrap();
        let ex = clear_crystal(&g, &c, f, gs, None).unwrap();
        prop_assert_eq!(&clear_crystal(&g, &c, f, gs, Some(&ex.trace)).unwrap(), &ex);
        if let Outcome::Crystal(out) = &ex.outcome {
            prop_assert!(common::is_crystal(&g, out) && common::is_clear(&g, out));
        }
    }
}
