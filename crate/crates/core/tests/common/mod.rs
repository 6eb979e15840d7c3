#![allow(dead_code)]

pub mod oracles;

use graph_stress::{DistanceMatrix, Graph, Layout, LayoutDistances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus independent extra edges with probability `p`.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_points(n: usize, spread: f64, rng: &mut ChaCha8Rng) -> Layout {
    Layout::new(
        (0..n)
            .map(|_| [spread * rng.gen::<f64>(), spread * rng.gen::<f64>()])
            .collect(),
    )
    .unwrap()
}

pub fn path_graph(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn line_layout(n: usize, spacing: f64) -> Layout {
    Layout::new((0..n).map(|i| [spacing * i as f64, 0.0]).collect()).unwrap()
}

pub fn dist(layout: &Layout) -> LayoutDistances {
    layout.pairwise_distances().unwrap()
}

pub fn p3() -> (Graph, DistanceMatrix) {
    let g = path_graph(3);
    let d = g.apsp().unwrap();
    (g, d)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
