use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{evaluate, MetricId, MetricOptions, DRS_SIZE_LIMIT};

use super::corpus::{NamedLayout, RANDOM};

/// Largest drawing distance imposed on non-random layouts by [`ScalePolicy::PaperLike`].
pub const PAPER_LIKE_MAX_DISTANCE: f64 = 800.0;

/// How layouts are scaled before scoring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalePolicy {
    /// Score layouts exactly as given.
    #[default]
    #[serde(rename = "as-is")]
    AsIs,
    /// Stretch every source except `random` to a largest drawing distance of
    /// [`PAPER_LIKE_MAX_DISTANCE`]; `random` stays in the unit square.
    #[serde(rename = "paper-like")]
    PaperLike,
}

impl ScalePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalePolicy::AsIs => "as-is",
            ScalePolicy::PaperLike => "paper-like",
        }
    }

    pub fn apply(self, layout: &NamedLayout) -> Result<NamedLayout> {
        match self {
            ScalePolicy::PaperLike if layout.source != RANDOM => Ok(NamedLayout::new(
                layout.source.clone(),
                layout
                    .layout
                    .scaled_to_max_distance(PAPER_LIKE_MAX_DISTANCE)?,
            )),
            _ => Ok(layout.clone()),
        }
    }
}

impl fmt::Display for ScalePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-is" => Ok(ScalePolicy::AsIs),
            "paper-like" => Ok(ScalePolicy::PaperLike),
            other => Err(Error::InvalidArgument(format!(
                "unknown scale policy '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricScore {
    pub value: Option<f64>,
    pub alpha_min: Option<f64>,
    pub seconds: f64,
    /// Why the metric was not evaluated, when it was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutScores {
    pub source: String,
    pub max_drawing_distance: f64,
    pub scores: BTreeMap<MetricId, MetricScore>,
}

impl LayoutScores {
    pub fn value(&self, metric: MetricId) -> Option<f64> {
        self.scores.get(&metric).and_then(|s| s.value)
    }
}

/// Scores of every layout of one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub graph_id: String,
    pub vertices: usize,
    pub edges: usize,
    pub layouts: Vec<LayoutScores>,
}

impl TrialRecord {
    pub fn source(&self, name: &str) -> Option<&LayoutScores> {
        self.layouts.iter().find(|l| l.source == name)
    }
}

/// Applies the scale policy, then scores every layout under every metric on
/// identical inputs. Distance ratio stress is skipped (and flagged) above its
/// size guard unless `opts.force` is set.
pub fn run_trial(
    graph_id: &str,
    graph: &Graph,
    layouts: &[NamedLayout],
    metrics: &[MetricId],
    policy: ScalePolicy,
    opts: &MetricOptions,
) -> Result<TrialRecord> {
    let d = graph.apsp()?;
    let n = graph.vertex_count();
    let mut out = Vec::with_capacity(layouts.len());
    for named in layouts {
        if named.layout.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: named.layout.len(),
            });
        }
        let scaled = policy.apply(named)?;
        let e = scaled.layout.pairwise_distances()?;
        let mut scores = BTreeMap::new();
        for &metric in metrics {
            if metric == MetricId::Drs && n > DRS_SIZE_LIMIT && !opts.force {
                scores.insert(
                    metric,
                    MetricScore {
                        value: None,
                        alpha_min: None,
                        seconds: 0.0,
                        skipped: Some(format!("n = {n} exceeds {DRS_SIZE_LIMIT}")),
                    },
                );
                continue;
            }
            let start = Instant::now();
            let v = evaluate(metric, &e, &d, opts)?;
            let seconds = start.elapsed().as_secs_f64();
            scores.insert(
                metric,
                MetricScore {
                    value: Some(v.value),
                    alpha_min: v.alpha_min,
                    seconds,
                    skipped: None,
                },
            );
        }
        out.push(LayoutScores {
            source: scaled.source,
            max_drawing_distance: e.max(),
            scores,
        });
    }
    Ok(TrialRecord {
        graph_id: graph_id.to_string(),
        vertices: n,
        edges: graph.edge_count(),
        layouts: out,
    })
}
