//! Undirected simple graphs, their text formats, and hop-count distances.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pairs::{pair_count, CondensedMatrix};

/// Undirected simple graph over vertex ids `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    /// Sorted, each edge stored once as `(min, max)`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v || u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidEdge(u, v));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidEdge(u, v));
            }
        }
        Ok(Self::from_edge_set(vertex_count, set))
    }

    fn from_edge_set(vertex_count: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self {
            vertex_count,
            edges: set.into_iter().collect(),
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// `|E| / C(|V|, 2)`.
    pub fn density(&self) -> f64 {
        let pairs = pair_count(self.vertex_count);
        if pairs == 0 {
            0.0
        } else {
            self.edges.len() as f64 / pairs as f64
        }
    }

    /// Parses the whitespace-separated `u v` edge-list format.
    ///
    /// Duplicate and reversed lines collapse to one edge and self-loops are dropped;
    /// the number of dropped loops is returned alongside the graph. A comment of the
    /// form `# vertices N` pins the vertex count so isolated trailing vertices survive
    /// a round trip through [`Graph::to_edge_list`].
    pub fn parse_edge_list(text: &str) -> Result<(Graph, usize)> {
        let mut set = BTreeSet::new();
        let mut self_loops = 0;
        let mut vertex_count = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let mut words = comment.split_whitespace();
                if words.next() == Some("vertices") {
                    if let Some(Ok(n)) = words.next().map(str::parse::<usize>) {
                        vertex_count = vertex_count.max(n);
                    }
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected two vertex ids, found {} tokens", tokens.len()),
                });
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("'{tok}' is not a vertex id"),
                })
            };
            let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
            vertex_count = vertex_count.max(u.max(v) + 1);
            if u == v {
                self_loops += 1;
                continue;
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok((Self::from_edge_set(vertex_count, set), self_loops))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertices {}\n", self.vertex_count);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Interprets a coordinate-format Matrix Market file as a graph.
    ///
    /// Row/column indices become vertices, off-diagonal nonzeros become edges
    /// (symmetrized), and values are discarded.
    pub fn parse_matrix_market(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty file".into(),
        })?;
        let fields: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
        if fields.len() < 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
            return Err(Error::UnsupportedFormat(format!(
                "bad Matrix Market banner '{header}'"
            )));
        }
        if fields[2] != "coordinate" {
            return Err(Error::UnsupportedFormat(format!(
                "'{}' layout (need coordinate)",
                fields[2]
            )));
        }
        if !matches!(fields[3].as_str(), "pattern" | "real" | "integer") {
            return Err(Error::UnsupportedFormat(format!("'{}' field", fields[3])));
        }
        if !matches!(
            fields[4].as_str(),
            "general" | "symmetric" | "skew-symmetric"
        ) {
            return Err(Error::UnsupportedFormat(format!(
                "'{}' symmetry",
                fields[4]
            )));
        }

        let mut size: Option<(usize, usize, usize)> = None;
        let mut set = BTreeSet::new();
        let mut seen = 0usize;
        for (lineno, raw) in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let int = |i: usize| -> Result<usize> {
                tokens
                    .get(i)
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno + 1,
                        message: format!("expected integer in column {}", i + 1),
                    })
            };
            match size {
                None => {
                    let (rows, cols, nnz) = (int(0)?, int(1)?, int(2)?);
                    if rows != cols {
                        return Err(Error::NonSquare { rows, cols });
                    }
                    size = Some((rows, cols, nnz));
                }
                Some((n, _, _)) => {
                    let (r, c) = (int(0)?, int(1)?);
                    if r == 0 || c == 0 || r > n || c > n {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            message: format!("entry ({r}, {c}) outside 1..={n}"),
                        });
                    }
                    seen += 1;
                    if r != c {
                        let (u, v) = (r - 1, c - 1);
                        set.insert((u.min(v), u.max(v)));
                    }
                }
            }
        }
        let (n, _, nnz) = size.ok_or_else(|| Error::Parse {
            line: 1,
            message: "missing size line".into(),
        })?;
        if seen != nnz {
            log::warn!("matrix market header declares {nnz} entries, found {seen}");
        }
        Ok(Self::from_edge_set(n, set))
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.components().len() == 1
    }

    /// Induced subgraph on the largest component, renumbered contiguously.
    ///
    /// Ties go to the component holding the smallest original id.
    pub fn largest_connected_component(&self) -> Result<ComponentExtraction> {
        if self.vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let comps = self.components();
        // components() is ordered by smallest member, so the first maximum wins ties
        let best = comps
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
            .map(|(i, _)| i)
            .expect("non-empty graph has a component");
        let original_ids = comps[best].clone();
        let mut new_id = vec![None; self.vertex_count];
        for (k, &v) in original_ids.iter().enumerate() {
            new_id[v] = Some(k);
        }
        let set = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((new_id[u]?, new_id[v]?)))
            .collect();
        Ok(ComponentExtraction {
            graph: Self::from_edge_set(original_ids.len(), set),
            original_ids,
        })
    }

    /// Single-source breadth-first hop counts; `None` for unreachable vertices.
    pub fn bfs_hops(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].unwrap() + 1;
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances via one BFS per source.
    pub fn apsp(&self) -> Result<DistanceMatrix> {
        let n = self.vertex_count;
        if n < 2 {
            return Err(Error::TooFewVertices {
                required: 2,
                found: n,
            });
        }
        let rows: Vec<Vec<Option<u32>>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let mut hops = self.bfs_hops(s);
                hops.drain(..=s);
                hops
            })
            .collect();
        let mut values = Vec::with_capacity(pair_count(n));
        for (i, row) in rows.into_iter().enumerate() {
            for (k, hop) in row.into_iter().enumerate() {
                match hop {
                    Some(h) => values.push(h as f64),
                    None => return Err(Error::Disconnected(i, i + 1 + k)),
                }
            }
        }
        Ok(DistanceMatrix(CondensedMatrix::new(n, values)?))
    }
}

/// Result of [`Graph::largest_connected_component`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentExtraction {
    pub graph: Graph,
    /// `original_ids[new_id]` is the vertex id in the source graph.
    pub original_ids: Vec<usize>,
}

impl ComponentExtraction {
    pub fn is_identity(&self) -> bool {
        self.original_ids.iter().enumerate().all(|(k, &v)| k == v)
    }
}

/// Graph-theoretic distances `d_ij` between every pair of vertices.
///
/// Weights `d_ij^-2` are derived on demand by the metrics and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix(CondensedMatrix);

impl DistanceMatrix {
    /// Wraps arbitrary target distances; off-diagonal entries must be positive.
    pub fn new(matrix: CondensedMatrix) -> Result<Self> {
        if let Some((i, j, v)) = matrix.iter_pairs().find(|&(_, _, v)| v <= 0.0) {
            return Err(Error::InvalidDistances(format!(
                "d({i}, {j}) = {v} is not positive"
            )));
        }
        Ok(Self(matrix))
    }

    pub fn from_square(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(CondensedMatrix::from_square(rows)?)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    pub fn values(&self) -> &[f64] {
        self.0.values()
    }

    pub fn matrix(&self) -> &CondensedMatrix {
        &self.0
    }

    /// Graph diameter for hop distances.
    pub fn max(&self) -> f64 {
        self.0.max()
    }
}
