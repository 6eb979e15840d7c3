mod common;

use std::path::Path;

use common::{random_connected_graph, rng};
use graph_stress::experiment::read_graph_file;
use graph_stress::Graph;
use proptest::prelude::*;

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn grid_fixture_counts() {
    let g = read_graph_file(&fixture("grid10x10.txt")).unwrap();
    assert_eq!(g.vertex_count(), 100);
    assert_eq!(g.edge_count(), 2 * 10 * 9);
    let d = g.apsp().unwrap();
    assert_eq!(d.max(), 18.0);
}

#[test]
fn matrix_market_fixture_is_a_path() {
    let g = read_graph_file(&fixture("p3.mtx")).unwrap();
    assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
}

#[test]
fn apsp_is_a_metric_on_random_graphs() {
    let mut r = rng(5);
    for seed in 0..120 {
        let n = 5 + seed % 40;
        let g = random_connected_graph(n, 0.05, &mut r);
        let d = g.apsp().unwrap();
        for i in 0..n {
            assert_eq!(d.get(i, i), 0.0);
            for j in 0..n {
                assert_eq!(d.get(i, j), d.get(j, i));
                if i != j {
                    assert!(d.get(i, j) >= 1.0);
                }
                for k in 0..n {
                    assert!(d.get(i, j) <= d.get(i, k) + d.get(k, j));
                }
            }
        }
        for &(u, v) in g.edges() {
            assert_eq!(d.get(u, v), 1.0);
        }
    }
}

#[test]
fn apsp_is_deterministic() {
    let g = random_connected_graph(80, 0.03, &mut rng(2));
    assert_eq!(g.apsp().unwrap(), g.apsp().unwrap());
}

proptest! {
    #[test]
    fn edge_list_round_trip(
        n in 1usize..40,
        raw in prop::collection::vec((0usize..40, 0usize..40), 0..120),
    ) {
        let edges: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(u, v)| (u % n, v % n))
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let g = Graph::new(n, edges).unwrap();
        let (back, loops) = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(loops, 0);
        prop_assert_eq!(back, g);
    }
}
