//! Ordering-frequency and metric-correlation tables over trial records.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricId;
use crate::stats::spearman;

use super::trial::TrialRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderCount {
    /// Sources from best to worst.
    pub order: Vec<String>,
    pub count: usize,
    pub frequency: f64,
}

impl OrderCount {
    pub fn label(&self) -> String {
        self.order.join("<")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricOrders {
    pub metric: MetricId,
    /// Graphs on which the metric was available for all three sources.
    pub graphs: usize,
    /// Graphs with at least one exact score tie (resolved by source name).
    pub ties: usize,
    pub pairwise: Vec<OrderCount>,
    pub triples: Vec<OrderCount>,
}

impl MetricOrders {
    pub fn triple_frequency(&self, order: &[&str]) -> Option<f64> {
        self.triples
            .iter()
            .find(|c| c.order.iter().map(String::as_str).eq(order.iter().copied()))
            .map(|c| c.frequency)
    }

    pub fn pair_frequency(&self, better: &str, worse: &str) -> Option<f64> {
        self.pairwise
            .iter()
            .find(|c| c.order[0] == better && c.order[1] == worse)
            .map(|c| c.frequency)
    }

    /// Fraction of graphs on which `source` scored best.
    pub fn best_frequency(&self, source: &str) -> f64 {
        self.triples
            .iter()
            .filter(|c| c.order[0] == source)
            .map(|c| c.frequency)
            .sum()
    }
}

/// Per metric, how often each strict ordering of the three sources occurs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderFrequencyTable {
    pub sources: [String; 3],
    pub metrics: Vec<MetricOrders>,
}

impl OrderFrequencyTable {
    pub fn get(&self, metric: MetricId) -> Option<&MetricOrders> {
        self.metrics.iter().find(|m| m.metric == metric)
    }
}

fn permutations3() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// Counts orderings of `sources` under every metric present in the records.
///
/// Lower is better except for the Shepard goodness score. Exact ties are broken
/// by source name and also tallied separately.
pub fn order_frequencies(
    records: &[TrialRecord],
    sources: [&str; 3],
    metrics: &[MetricId],
) -> Result<OrderFrequencyTable> {
    let mut tables = Vec::with_capacity(metrics.len());
    for &metric in metrics {
        let mut triple_counts = [0usize; 6];
        let mut pair_counts = [[0usize; 3]; 3];
        let mut graphs = 0;
        let mut ties = 0;
        for record in records {
            let mut values = [0.0; 3];
            let mut complete = true;
            for (k, name) in sources.iter().enumerate() {
                let scores = record.source(name).ok_or_else(|| Error::MissingSource {
                    graph: record.graph_id.clone(),
                    source_name: name.to_string(),
                })?;
                match scores.value(metric) {
                    Some(v) => values[k] = if metric.higher_is_better() { -v } else { v },
                    None => complete = false,
                }
            }
            if !complete {
                continue;
            }
            graphs += 1;
            if values[0] == values[1] || values[1] == values[2] || values[0] == values[2] {
                ties += 1;
            }
            let mut rank = [0usize, 1, 2];
            rank.sort_by(|&a, &b| {
                values[a]
                    .total_cmp(&values[b])
                    .then_with(|| sources[a].cmp(sources[b]))
            });
            let perm = permutations3().iter().position(|p| *p == rank).unwrap();
            triple_counts[perm] += 1;
            for (x, &a) in rank.iter().enumerate() {
                for &b in &rank[x + 1..] {
                    pair_counts[a][b] += 1;
                }
            }
        }
        let freq = |c: usize| {
            if graphs == 0 {
                0.0
            } else {
                c as f64 / graphs as f64
            }
        };
        let mut pairwise = Vec::with_capacity(6);
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    pairwise.push(OrderCount {
                        order: vec![sources[a].to_string(), sources[b].to_string()],
                        count: pair_counts[a][b],
                        frequency: freq(pair_counts[a][b]),
                    });
                }
            }
        }
        let triples = permutations3()
            .iter()
            .zip(triple_counts)
            .map(|(p, count)| OrderCount {
                order: p.iter().map(|&k| sources[k].to_string()).collect(),
                count,
                frequency: freq(count),
            })
            .collect();
        tables.push(MetricOrders {
            metric,
            graphs,
            ties,
            pairwise,
            triples,
        });
    }
    Ok(OrderFrequencyTable {
        sources: sources.map(str::to_string),
        metrics: tables,
    })
}

/// Spearman correlations between metrics over pooled (graph, source) scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTable {
    pub metrics: Vec<MetricId>,
    /// `None` where the correlation is undefined (constant or too-short series).
    pub values: Vec<Vec<Option<f64>>>,
}

impl CorrelationTable {
    pub fn get(&self, a: MetricId, b: MetricId) -> Option<f64> {
        let i = self.metrics.iter().position(|&m| m == a)?;
        let j = self.metrics.iter().position(|&m| m == b)?;
        self.values[i][j]
    }
}

/// Correlates every pair of metrics across all (graph, source) scores.
///
/// Records are pooled in graph-id order, sources in record order. The Shepard
/// goodness series is negated so all metrics point the same way. Rows where
/// either metric is missing are dropped pairwise.
pub fn metric_correlations(
    records: &[TrialRecord],
    metrics: &[MetricId],
) -> Result<CorrelationTable> {
    if records.len() < 2 {
        return Err(Error::InvalidArgument(
            "correlations need at least two graphs".into(),
        ));
    }
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    let series: Vec<Vec<Option<f64>>> = metrics
        .iter()
        .map(|&m| {
            sorted
                .iter()
                .flat_map(|r| r.layouts.iter())
                .map(|l| {
                    l.value(m)
                        .map(|v| if m.higher_is_better() { -v } else { v })
                })
                .collect()
        })
        .collect();

    let k = metrics.len();
    let mut values = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let (xs, ys): (Vec<f64>, Vec<f64>) = series[i]
                .iter()
                .zip(&series[j])
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .unzip();
            let r = if xs.len() < 2 {
                None
            } else {
                match spearman(&xs, &ys) {
                    Ok(r) => Some(r),
                    Err(Error::UndefinedCorrelation) => None,
                    Err(e) => return Err(e),
                }
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationTable {
        metrics: metrics.to_vec(),
        values,
    })
}
