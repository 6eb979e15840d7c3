//! Generated graph corpora and the three standard layout sources.

use std::collections::BTreeSet;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::layout::{circle_layout, optimize_layout, random_layout, Layout};
use crate::rng::{derive_seed, rng_from_seed};

pub const OPTIMIZED: &str = "optimized";
pub const CIRCLE: &str = "circle";
pub const RANDOM: &str = "random";

/// Ground-truth quality order, best first.
pub const GROUND_TRUTH: [&str; 3] = [OPTIMIZED, CIRCLE, RANDOM];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSpec {
    pub count: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Target `|E| / C(n, 2)`; never fewer than `n - 1` edges.
    pub density: f64,
    /// Largest circular id offset an edge may span.
    pub bandwidth: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            count: 50,
            min_vertices: 20,
            max_vertices: 60,
            density: 0.08,
            bandwidth: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub id: String,
    pub graph: Graph,
    /// Seed for this graph's layouts.
    pub seed: u64,
}

/// Connected random graph whose edges join vertices with nearby ids.
///
/// A random tree attaches each vertex `i > 0` to one of its `bandwidth`
/// predecessors; extra edges between vertices at circular id offset
/// `1..=bandwidth` are then added until the target density is met.
pub fn banded_random_graph(n: usize, density: f64, bandwidth: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            found: n,
        });
    }
    if bandwidth == 0 || !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "bandwidth {bandwidth} / density {density} out of range"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(i.saturating_sub(bandwidth)..i);
        edges.insert((j, i));
    }
    let band = bandwidth.min(n / 2);
    let available = if 2 * band == n {
        n * band - n / 2
    } else {
        n * band
    };
    let pairs = n * (n - 1) / 2;
    let target = ((density * pairs as f64).round() as usize)
        .max(n - 1)
        .min(available.max(n - 1));
    while edges.len() < target {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..=band)) % n;
        edges.insert((i.min(j), i.max(j)));
    }
    Graph::new(n, edges)
}

/// Deterministic corpus from a seed.
pub fn generate_corpus(spec: &CorpusSpec, seed: u64) -> Result<Vec<CorpusGraph>> {
    if spec.min_vertices < 3 || spec.min_vertices > spec.max_vertices {
        return Err(Error::InvalidArgument(format!(
            "vertex range [{}, {}] is invalid",
            spec.min_vertices, spec.max_vertices
        )));
    }
    (0..spec.count)
        .map(|k| {
            let graph_seed = derive_seed(seed, &[0xc0, k as u64]);
            let mut rng = rng_from_seed(graph_seed);
            let n = rng.gen_range(spec.min_vertices..=spec.max_vertices);
            let graph = banded_random_graph(
                n,
                spec.density,
                spec.bandwidth,
                derive_seed(graph_seed, &[1]),
            )?;
            Ok(CorpusGraph {
                id: format!("g{k:04}"),
                graph,
                seed: derive_seed(graph_seed, &[2]),
            })
        })
        .collect()
}

/// Loads every edge-list (`.txt`, `.edges`, `.el`) and Matrix Market (`.mtx`)
/// file in a directory, reduced to its largest component. Files are visited in
/// name order; ids are file stems.
pub fn load_corpus_dir(dir: &Path, seed: u64) -> Result<Vec<CorpusGraph>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("txt" | "edges" | "el" | "mtx")
            )
        })
        .collect();
    paths.sort();
    paths
        .iter()
        .enumerate()
        .map(|(k, path)| {
            let graph = read_graph_file(path)?;
            let lcc = graph.largest_connected_component()?.graph;
            Ok(CorpusGraph {
                id: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| format!("file{k}")),
                graph: lcc,
                seed: derive_seed(seed, &[0xf1, k as u64]),
            })
        })
        .collect()
}

/// Reads a graph, choosing the parser by extension (`.mtx` is Matrix Market).
pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("mtx") {
        Graph::parse_matrix_market(&text)
    } else {
        let (g, loops) = Graph::parse_edge_list(&text)?;
        if loops > 0 {
            log::warn!("{}: dropped {loops} self-loops", path.display());
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedLayout {
    pub source: String,
    pub layout: Layout,
}

impl NamedLayout {
    pub fn new(source: impl Into<String>, layout: Layout) -> Self {
        Self {
            source: source.into(),
            layout,
        }
    }
}

/// Optimized, circle and random layouts of one graph.
pub fn standard_layouts(
    graph: &Graph,
    distances: &DistanceMatrix,
    seed: u64,
    iterations: usize,
) -> Result<Vec<NamedLayout>> {
    let n = graph.vertex_count();
    Ok(vec![
        NamedLayout::new(
            OPTIMIZED,
            optimize_layout(graph, distances, derive_seed(seed, &[1]), iterations)?,
        ),
        NamedLayout::new(CIRCLE, circle_layout(n)?),
        NamedLayout::new(RANDOM, random_layout(n, derive_seed(seed, &[3]))),
    ])
}
