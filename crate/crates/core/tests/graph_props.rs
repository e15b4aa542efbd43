use std::collections::HashSet;

use levgraph::strings::lit;
use levgraph::{
    degree_formula, edit_distance_dp, hamming_distance, GraphSpec, LevGraph, LevString,
};

fn graph(k1: usize, k2: usize, a: u32) -> LevGraph {
    LevGraph::build(GraphSpec::new(k1, k2, a).unwrap()).unwrap()
}

#[test]
fn adjacency_is_edit_distance_one() {
    for (k1, k2, a) in [(0, 4, 2), (1, 3, 3), (2, 3, 4), (3, 3, 2)] {
        let g = graph(k1, k2, a);
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let one = edit_distance_dp(&g.string_at(u), &g.string_at(v)) == 1;
                assert_eq!(g.has_edge(u, v), one);
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }
}

#[test]
fn neighbors_differ_in_length_by_at_most_one() {
    let g = graph(0, 5, 2);
    for (u, v) in g.edges() {
        assert!(g.string_at(u).len().abs_diff(g.string_at(v).len()) <= 1);
    }
}

#[test]
fn fixed_length_layers_are_hamming_graphs() {
    let g = graph(1, 4, 3);
    for u in 0..g.vertex_count() {
        let su = g.string_at(u);
        for v in 0..g.vertex_count() {
            let sv = g.string_at(v);
            if su.len() == sv.len() {
                assert_eq!(g.has_edge(u, v), hamming_distance(&su, &sv).unwrap() == 1);
            }
        }
    }
}

#[test]
fn closed_form_matches_bfs() {
    for (k1, k2, a) in [(0, 4, 2), (2, 4, 3), (3, 3, 2), (4, 4, 2), (2, 2, 3)] {
        let g = graph(k1, k2, a);
        let d = g.all_pairs_distances();
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let cf = g
                    .geodesic_closed_form(&g.string_at(u), &g.string_at(v))
                    .unwrap();
                assert_eq!(d[u][v] as usize, cf);
            }
        }
    }
}

#[test]
fn degree_formula_on_interior_vertices() {
    let g = graph(0, 4, 4);
    let a = g.spec().a;
    for rank in 0..g.vertex_count() {
        let w = g.string_at(rank);
        if (1..4).contains(&w.len()) {
            assert_eq!(g.degree_split(rank), degree_formula(&w, a), "{w}");
        }
    }
}

#[test]
fn three_supersequence_neighbors_determine_a_string() {
    let a = 2;
    for n in 0..=4 {
        let shorter: Vec<LevString> = GraphSpec::new(n, n, a).unwrap().strings().collect();
        let longer: Vec<LevString> = GraphSpec::new(n + 1, n + 1, a).unwrap().strings().collect();
        let ups: Vec<HashSet<&LevString>> = shorter
            .iter()
            .map(|u| {
                longer
                    .iter()
                    .filter(|v| edit_distance_dp(u, v) == 1)
                    .collect()
            })
            .collect();
        for i in 0..shorter.len() {
            for j in i + 1..shorter.len() {
                let shared = ups[i].intersection(&ups[j]).count();
                assert!(
                    shared < 3,
                    "{} and {} share {shared}",
                    shorter[i],
                    shorter[j]
                );
            }
        }
    }
}

#[test]
fn diameter_examples() {
    assert_eq!(graph(0, 3, 2).diameter().unwrap(), 3);
    assert_eq!(graph(3, 3, 2).diameter().unwrap(), 3);
    assert_eq!(graph(0, 1, 3).diameter().unwrap(), 1);
    let g = graph(0, 3, 2);
    let d = g.geodesic_bfs(&lit("010")).unwrap();
    assert_eq!(d[g.rank_of(&lit("101")).unwrap()], 2);
}

#[test]
fn budget_guard_is_an_error() {
    let spec = GraphSpec::new(0, 12, 4).unwrap();
    assert!(LevGraph::build_with_budget(spec, 1000).is_err());
}
