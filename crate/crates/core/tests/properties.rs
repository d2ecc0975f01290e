mod common;

use std::collections::BTreeSet;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tightspan_core::combinatorics::all_subsets;
use tightspan_core::constructions::{complete_kpartite, fixture, path_blowup, FixtureName};
use tightspan_core::framework::{closed_walk_residues, is_closed_walk, maximum_fractional_matching, DEFAULT_STATE_CAP};
use tightspan_core::oracle::search_spanning_sphere;
use tightspan_core::topology::connected_sum;
use tightspan_core::*;

/// A random k-graph on `n` vertices: each k-subset kept according to `keep`.
fn pick(k: usize, n: usize, keep: &[bool]) -> Hypergraph {
    let flat = all_subsets(n, k);
    let edges: Vec<&[u32]> = flat.chunks(k).zip(keep).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Hypergraph::new(k, n, edges).unwrap()
}

fn graph(k: usize, n_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Hypergraph> {
    n_range.prop_flat_map(move |n| {
        let m = tightspan_core::combinatorics::binom(n, k);
        prop::collection::vec(any::<bool>(), m).prop_map(move |keep| pick(k, n, &keep))
    })
}

fn any_graph() -> impl Strategy<Value = Hypergraph> {
    prop_oneof![graph(3, 3..=8), graph(4, 4..=7), graph(2, 2..=8)]
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_sum_is_k_times_edges(g in any_graph()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), g.k() * g.edge_count());
    }

    #[test]
    fn link_size_is_degree(g in graph(3, 3..=8)) {
        for v in 0..g.n() as u32 {
            prop_assert_eq!(g.link_graph(v).unwrap().edge_count(), g.degree(v));
        }
    }

    #[test]
    fn components_match_line_graph_bfs(g in any_graph()) {
        let d = tight_components(&g);
        let parts: BTreeSet<Vec<usize>> = d.parts().iter().cloned().collect();
        prop_assert_eq!(&parts, &naive_components(&g));
        // partition of the edge set
        let total: usize = d.parts().iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.edge_count());
        for (p, part) in d.parts().iter().enumerate() {
            for &e in part {
                prop_assert_eq!(d.part_of_edge(e), p);
            }
        }
        prop_assert_eq!(d.has_spanning_part(), naive_has_spanning(&g));
    }

    #[test]
    fn min_degree_matches_scan(g in any_graph(), d in 1usize..3) {
        prop_assume!(d < g.k());
        prop_assert_eq!(g.min_degree(d).unwrap(), naive_min_degree(&g, d));
    }

    #[test]
    fn min_degree_is_monotone(keep in prop::collection::vec(any::<bool>(), 35), extra in 0usize..35) {
        let g = pick(3, 7, &keep);
        let mut more = keep.clone();
        more[extra] = true;
        let h = pick(3, 7, &more);
        prop_assert!(h.min_degree(1).unwrap() >= g.min_degree(1).unwrap());
        prop_assert!(h.min_degree(2).unwrap() >= g.min_degree(2).unwrap());
    }

    #[test]
    fn link_witness_lies_in_one_component(g in graph(3, 4..=8), x in 0u32..4) {
        let Ok(c) = link_component_diagnostics(&g, x) else {
            prop_assert_eq!(g.degree(x), 0);
            return Ok(());
        };
        let d = tight_components(&g);
        let parts: BTreeSet<usize> = c.witness.iter().map(|&e| d.part_of_edge(e)).collect();
        prop_assert_eq!(parts.len(), 1);
        for &e in &c.witness {
            let rest: Vec<u32> = g.edge(e).iter().copied().filter(|&v| v != x).collect();
            prop_assert!(rest.iter().all(|v| c.vertices.contains(v)));
        }
    }

    #[test]
    fn relabelling_preserves_components(g in graph(3, 5..=8).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let (g, perm) = g;
        let h = g.relabel(&perm).unwrap();
        let a = tight_components(&g);
        let b = tight_components(&h);
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.has_spanning_part(), b.has_spanning_part());
        prop_assert_eq!(g.min_degree(1).unwrap(), h.min_degree(1).unwrap());
    }

    #[test]
    fn blowups_span_themselves(sizes in prop::collection::vec(1usize..4, 3..7)) {
        let l = sizes.len();
        let b = path_blowup(3, l, &sizes).unwrap();
        prop_assert!(is_spanning_in_blowup(b.result(), &b).unwrap());
        prop_assert_eq!(b.result().n(), sizes.iter().sum::<usize>());
        let expected: usize = (0..l - 2).map(|i| sizes[i] * sizes[i + 1] * sizes[i + 2]).sum();
        prop_assert_eq!(b.result().edge_count(), expected);
        for e in b.result().edges() {
            prop_assert!(b.project(e).is_some());
        }
    }

    #[test]
    fn classification_survives_relabelling(which in 0usize..2, seed in any::<u64>()) {
        let name = [FixtureName::T9, FixtureName::P12][which];
        let (s, _) = fixture(name);
        let n = s.n();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let t = s.map_vertices(&perm, n).unwrap();
        prop_assert_eq!(s.classify(), t.classify());
        prop_assert_eq!(t.euler_characteristic(), naive_euler(t.faces()));
    }

    #[test]
    fn euler_characteristic_adds_under_glueing(a in 0usize..3, b in 0usize..3, face in 0usize..8) {
        let tet = Surface2::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let pieces = [tet, fixture(FixtureName::T9).0, fixture(FixtureName::P12).0];
        let s = &pieces[a];
        let t = &pieces[b];
        let f = s.faces()[face % s.face_count()];
        let moved = t.align_face(t.faces()[0], f, s.n() as u32).unwrap();
        let sum = connected_sum(s, &moved, f).unwrap();
        prop_assert_eq!(sum.euler_characteristic(), s.euler_characteristic() + t.euler_characteristic() - 2);
        prop_assert_eq!(sum.is_orientable(), s.is_orientable() && t.is_orientable());
        prop_assert!(sum.classify().is_closed_surface());
    }

    #[test]
    fn found_spheres_are_spanning_subcomplexes(sizes in prop::collection::vec(2usize..4, 3)) {
        let b = complete_kpartite(3, &sizes).unwrap();
        let g = b.result();
        if let Some(s) = search_spanning_sphere(g, 200_000).unwrap().found() {
            prop_assert_eq!(s.classify(), SurfaceClass::sphere());
            prop_assert!(s.to_hypergraph().is_subgraph_of(g));
            prop_assert_eq!(s.used_vertices().len(), g.n());
            prop_assert_eq!(s.face_count(), 2 * g.n() - 4);
        }
    }

    #[test]
    fn fractional_matching_is_optimal(g in graph(3, 3..=7)) {
        let opt = maximum_fractional_matching(&g);
        prop_assert!(opt.matching.is_valid_for(&g));
        prop_assert!(opt.cover_is_feasible(&g));
        prop_assert_eq!(opt.cover_size(), opt.matching.size.clone());
        for w in &opt.matching.weights {
            prop_assert!(*w >= Zero::zero());
            prop_assert!(*w <= One::one());
        }
    }

    #[test]
    fn walk_witnesses_are_closed_walks(g in graph(3, 4..=7)) {
        prop_assume!(g.edge_count() > 0);
        let r = closed_walk_residues(&g, DEFAULT_STATE_CAP).unwrap();
        prop_assert!(r.contains(0));
        for res in 0..3 {
            prop_assert_eq!(r.contains(res), r.witness(res).is_some());
            if let Some(w) = r.witness(res) {
                prop_assert!(is_closed_walk(&g, w));
                prop_assert_eq!(w.len() % 3, res);
            }
        }
    }
}
