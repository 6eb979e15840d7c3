//! Wall-clock scaling of metric evaluation with graph size.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::random_layout;
use crate::metrics::{evaluate, MetricId, MetricOptions, DRS_SIZE_LIMIT};
use crate::rng::derive_seed;

use super::corpus::banded_random_graph;

/// Batches shorter than this are repeated until they are not.
const MIN_BATCH: Duration = Duration::from_millis(2);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeRow {
    pub vertices: usize,
    pub metric: MetricId,
    /// Median seconds per evaluation.
    pub median_seconds: f64,
    /// Evaluations per timed batch.
    pub batch: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeTable {
    pub rows: Vec<RuntimeRow>,
    /// Least-squares slope of `ln t` against `ln n`, per metric.
    pub slopes: BTreeMap<MetricId, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuntimeSpec {
    pub sizes: Vec<usize>,
    pub metrics: Vec<MetricId>,
    pub repetitions: usize,
    pub force: bool,
}

impl Default for RuntimeSpec {
    fn default() -> Self {
        Self {
            sizes: vec![100, 200, 400, 800],
            metrics: vec![MetricId::Ns, MetricId::Sns, MetricId::Scs],
            repetitions: 5,
            force: false,
        }
    }
}

/// Log-log least-squares slope.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Times each metric on a generated graph of each size.
///
/// One untimed warm-up call sizes a batch so that it lasts at least a couple of
/// milliseconds; `repetitions` batches are then timed and the median per-call
/// time reported. Graph distances are computed outside the timed region.
pub fn runtime_benchmark(spec: &RuntimeSpec, seed: u64) -> Result<RuntimeTable> {
    if spec.repetitions < 3 {
        return Err(Error::InvalidArgument("need at least 3 repetitions".into()));
    }
    if spec.sizes.windows(2).any(|w| w[0] >= w[1]) || spec.sizes.first().is_some_and(|&n| n < 3) {
        return Err(Error::InvalidArgument(
            "sizes must be ascending and at least 3".into(),
        ));
    }
    if spec.metrics.contains(&MetricId::Drs) && !spec.force {
        if let Some(&n) = spec.sizes.iter().find(|&&n| n > DRS_SIZE_LIMIT) {
            return Err(Error::SizeGuard {
                metric: "drs",
                n,
                limit: DRS_SIZE_LIMIT,
            });
        }
    }
    let opts = MetricOptions {
        kk_l0: None,
        force: spec.force,
    };
    let mut rows = Vec::new();
    for &n in &spec.sizes {
        let graph_seed = derive_seed(seed, &[0xbe, n as u64]);
        let graph = banded_random_graph(n, 0.08, 4, graph_seed)?;
        let d = graph.apsp()?;
        let e = random_layout(n, derive_seed(graph_seed, &[1])).pairwise_distances()?;
        for &metric in &spec.metrics {
            let warm = Instant::now();
            std::hint::black_box(evaluate(metric, &e, &d, &opts)?);
            let once = warm.elapsed().max(Duration::from_nanos(1));
            let batch = (MIN_BATCH.as_secs_f64() / once.as_secs_f64())
                .ceil()
                .max(1.0) as usize;
            let mut samples = Vec::with_capacity(spec.repetitions);
            for _ in 0..spec.repetitions {
                let start = Instant::now();
                for _ in 0..batch {
                    std::hint::black_box(evaluate(metric, std::hint::black_box(&e), &d, &opts)?);
                }
                samples.push(start.elapsed().as_secs_f64() / batch as f64);
            }
            rows.push(RuntimeRow {
                vertices: n,
                metric,
                median_seconds: median(samples),
                batch,
            });
        }
    }
    let slopes = spec
        .metrics
        .iter()
        .filter_map(|&m| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.metric == m)
                .map(|r| (r.vertices as f64, r.median_seconds))
                .collect();
            loglog_slope(&pts).map(|s| (m, s))
        })
        .collect();
    Ok(RuntimeTable { rows, slopes })
}
