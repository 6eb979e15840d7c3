//! Two-dimensional drawings: scaling, pairwise distances, generators and CSV I/O.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::pairs::{pair_count, CondensedMatrix};
use crate::rng::rng_from_seed;

/// Vertex positions; row `i` is the position of vertex `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    positions: Vec<[f64; 2]>,
}

impl Layout {
    pub fn new(positions: Vec<[f64; 2]>) -> Result<Self> {
        for (i, p) in positions.iter().enumerate() {
            for &c in p {
                if !c.is_finite() {
                    return Err(Error::NonFinite { index: i, value: c });
                }
            }
        }
        Ok(Self { positions })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    /// Euclidean distance between every pair of vertices.
    pub fn pairwise_distances(&self) -> Result<LayoutDistances> {
        let n = self.len();
        if n < 2 {
            return Err(Error::TooFewVertices {
                required: 2,
                found: n,
            });
        }
        let mut values = Vec::with_capacity(pair_count(n));
        for (i, a) in self.positions.iter().enumerate() {
            for b in &self.positions[i + 1..] {
                values.push((a[0] - b[0]).hypot(a[1] - b[1]));
            }
        }
        Ok(LayoutDistances(CondensedMatrix::new(n, values)?))
    }

    /// Multiplies every coordinate by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Result<Layout> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidScale(alpha));
        }
        Ok(Layout {
            positions: self
                .positions
                .iter()
                .map(|p| [p[0] * alpha, p[1] * alpha])
                .collect(),
        })
    }

    /// Largest pairwise drawing distance.
    pub fn max_drawing_distance(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.positions.iter().enumerate() {
            for b in &self.positions[i + 1..] {
                best = best.max((a[0] - b[0]).hypot(a[1] - b[1]));
            }
        }
        best
    }

    /// Rescales so the largest pairwise distance equals `target`.
    pub fn scaled_to_max_distance(&self, target: f64) -> Result<Layout> {
        let current = self.max_drawing_distance();
        if current <= 0.0 {
            return Err(Error::DegenerateLayout("all points coincide"));
        }
        self.scaled(target / current)
    }

    /// Keeps only the rows listed in `ids`, in that order.
    pub fn select(&self, ids: &[usize]) -> Result<Layout> {
        let positions = ids
            .iter()
            .map(|&v| {
                self.positions
                    .get(v)
                    .copied()
                    .ok_or(Error::MissingVertex(v))
            })
            .collect::<Result<_>>()?;
        Ok(Layout { positions })
    }

    /// Reads the `id,x,y` CSV format. Every id in `0..n` must appear exactly once.
    pub fn read_csv<R: Read>(reader: R) -> Result<Layout> {
        let rows = read_csv_rows(reader)?;
        let n = rows.keys().next_back().map_or(0, |&m| m + 1);
        let positions = (0..n)
            .map(|v| rows.get(&v).copied().ok_or(Error::MissingVertex(v)))
            .collect::<Result<_>>()?;
        Layout::new(positions)
    }

    /// Reads rows for exactly the vertices in `ids` (original ids), ignoring others.
    pub fn read_csv_for<R: Read>(reader: R, ids: &[usize]) -> Result<Layout> {
        let rows = read_csv_rows(reader)?;
        let positions = ids
            .iter()
            .map(|&v| rows.get(&v).copied().ok_or(Error::MissingVertex(v)))
            .collect::<Result<_>>()?;
        Layout::new(positions)
    }

    /// Writes `id,x,y` with shortest round-trip float formatting.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["id", "x", "y"])?;
        for (i, p) in self.positions.iter().enumerate() {
            w.write_record([i.to_string(), p[0].to_string(), p[1].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn read_csv_rows<R: Read>(reader: R) -> Result<BTreeMap<usize, [f64; 2]>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["id", "x", "y"] {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header 'id,x,y', found '{}'",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut rows = BTreeMap::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        let line = k + 2;
        let field = |i: usize| {
            record.get(i).ok_or_else(|| Error::Parse {
                line,
                message: "expected three columns".into(),
            })
        };
        let bad = |what: &str, tok: &str| Error::Parse {
            line,
            message: format!("invalid {what} '{tok}'"),
        };
        let id: usize = field(0)?
            .parse()
            .map_err(|_| bad("id", field(0).unwrap_or("")))?;
        let x: f64 = field(1)?
            .parse()
            .map_err(|_| bad("x", field(1).unwrap_or("")))?;
        let y: f64 = field(2)?
            .parse()
            .map_err(|_| bad("y", field(2).unwrap_or("")))?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(bad("coordinate", &format!("{x},{y}")));
        }
        if rows.insert(id, [x, y]).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate row for vertex {id}"),
            });
        }
    }
    Ok(rows)
}

/// Euclidean distances `||X_i - X_j||` of a layout, in condensed pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutDistances(pub(crate) CondensedMatrix);

impl LayoutDistances {
    pub fn new(matrix: CondensedMatrix) -> Result<Self> {
        if let Some((i, j, v)) = matrix.iter_pairs().find(|&(_, _, v)| v < 0.0) {
            return Err(Error::InvalidDistances(format!(
                "e({i}, {j}) = {v} is negative"
            )));
        }
        Ok(Self(matrix))
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

    pub fn max(&self) -> f64 {
        self.0.max()
    }

    /// Distances of the layout scaled by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Result<LayoutDistances> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidScale(alpha));
        }
        Ok(LayoutDistances(self.0.map(|v| v * alpha)))
    }
}

/// Uniform positions in the unit square.
pub fn random_layout(n: usize, seed: u64) -> Layout {
    let mut rng = rng_from_seed(seed);
    let positions = (0..n)
        .map(|_| [rng.gen::<f64>(), rng.gen::<f64>()])
        .collect();
    Layout { positions }
}

/// Vertex `i` at angle `2*pi*i/n` on the unit circle.
pub fn circle_layout(n: usize) -> Result<Layout> {
    if n < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            found: n,
        });
    }
    let positions = (0..n)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / n as f64;
            [theta.cos(), theta.sin()]
        })
        .collect();
    Ok(Layout { positions })
}

/// Parameters of the pairwise stress optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub iterations: usize,
    /// Pair updates per iteration, as a multiple of the vertex count.
    pub updates_per_vertex: usize,
    pub step_start: f64,
    pub step_end: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            iterations: 100,
            updates_per_vertex: 15,
            step_start: 0.1,
            step_end: 0.001,
        }
    }
}

/// Stress-minimizing layout by stochastic pair relaxation.
///
/// Starts from [`random_layout`] and repeatedly picks a random vertex pair, moving
/// both endpoints along their connecting line to close a fraction of the gap to
/// `d_ij`. The fraction decays geometrically from `step_start` to `step_end`.
pub fn optimize_layout(
    graph: &Graph,
    distances: &DistanceMatrix,
    seed: u64,
    iterations: usize,
) -> Result<Layout> {
    optimize_layout_with(
        graph,
        distances,
        seed,
        OptimizerConfig {
            iterations,
            ..OptimizerConfig::default()
        },
    )
}

pub fn optimize_layout_with(
    graph: &Graph,
    distances: &DistanceMatrix,
    seed: u64,
    config: OptimizerConfig,
) -> Result<Layout> {
    let n = graph.vertex_count();
    if distances.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: distances.n(),
        });
    }
    if config.iterations == 0 {
        return Err(Error::InvalidArgument(
            "iterations must be at least 1".into(),
        ));
    }
    if n < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            found: n,
        });
    }
    let mut layout = random_layout(n, seed);
    let mut rng = rng_from_seed(crate::rng::derive_seed(seed, &[0x0b71]));
    let pos = &mut layout.positions;
    let updates = config.updates_per_vertex.max(1) * n;
    let decay = if config.iterations > 1 {
        (config.step_end / config.step_start).powf(1.0 / (config.iterations - 1) as f64)
    } else {
        1.0
    };
    let mut step = config.step_start;
    for _ in 0..config.iterations {
        for _ in 0..updates {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let target = distances.get(i, j);
            let (dx, dy) = (pos[i][0] - pos[j][0], pos[i][1] - pos[j][1]);
            let len = dx.hypot(dy);
            let (ux, uy) = if len > 1e-12 {
                (dx / len, dy / len)
            } else {
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                (theta.cos(), theta.sin())
            };
            let shift = step * (len - target) / 2.0;
            pos[i][0] -= shift * ux;
            pos[i][1] -= shift * uy;
            pos[j][0] += shift * ux;
            pos[j][1] += shift * uy;
        }
        step *= decay;
    }
    Ok(layout)
}
