//! Harness that scores three layouts of every corpus graph and tabulates how
//! the metrics order them.

mod corpus;
mod runtime;
mod tables;
mod trial;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{MetricId, MetricOptions};

pub use corpus::{
    banded_random_graph, generate_corpus, load_corpus_dir, read_graph_file, standard_layouts,
    CorpusGraph, CorpusSpec, NamedLayout, CIRCLE, GROUND_TRUTH, OPTIMIZED, RANDOM,
};
pub use runtime::{loglog_slope, runtime_benchmark, RuntimeRow, RuntimeSpec, RuntimeTable};
pub use tables::{
    metric_correlations, order_frequencies, CorrelationTable, MetricOrders, OrderCount,
    OrderFrequencyTable,
};
pub use trial::{
    run_trial, LayoutScores, MetricScore, ScalePolicy, TrialRecord, PAPER_LIKE_MAX_DISTANCE,
};

/// Share of failed trials above which a run counts as failed.
pub const MAX_FAILURE_RATE: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub corpus: CorpusSpec,
    /// Directory of graph files used instead of the generated corpus.
    pub corpus_dir: Option<PathBuf>,
    /// Optimizer sweeps for the `optimized` layout.
    pub iterations: usize,
    pub policy: ScalePolicy,
    pub metrics: Vec<MetricId>,
    /// Evaluate distance ratio stress beyond its size guard.
    pub force: bool,
    pub runtime: Option<RuntimeSpec>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            corpus: CorpusSpec::default(),
            corpus_dir: None,
            iterations: 100,
            policy: ScalePolicy::PaperLike,
            metrics: MetricId::ALL.to_vec(),
            force: false,
            runtime: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let mut config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.metrics.sort();
        config.metrics.dedup();
        if config.metrics.is_empty() {
            return Err(Error::Config("no metrics selected".into()));
        }
        if config.iterations == 0 {
            return Err(Error::Config("iterations must be positive".into()));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Suffix shared by every output file name, e.g. `seed42_paper-like`.
    pub fn tag(&self) -> String {
        format!("seed{}_{}", self.seed, self.policy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub graph_id: String,
    pub message: String,
}

/// One checked expectation about the tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub bound: String,
    pub passed: bool,
}

impl Check {
    fn at_least(name: String, observed: f64, min: f64) -> Self {
        Check {
            name,
            observed,
            bound: format!(">= {min}"),
            passed: observed >= min,
        }
    }

    fn at_most(name: String, observed: f64, max: f64) -> Self {
        Check {
            name,
            observed,
            bound: format!("<= {max}"),
            passed: observed <= max,
        }
    }

    fn greater(name: String, observed: f64, min: f64) -> Self {
        Check {
            name,
            observed,
            bound: format!("> {min}"),
            passed: observed > min,
        }
    }

    fn less(name: String, observed: f64, max: f64) -> Self {
        Check {
            name,
            observed,
            bound: format!("< {max}"),
            passed: observed < max,
        }
    }

    pub fn verdict(&self) -> String {
        format!(
            "{} {}: {:.4} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            self.bound
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
    pub frequencies: OrderFrequencyTable,
    pub correlations: Option<CorrelationTable>,
    pub runtime: Option<RuntimeTable>,
    pub checks: Vec<Check>,
}

impl ExperimentOutcome {
    pub fn failure_rate(&self) -> f64 {
        let total = self.records.len() + self.failures.len();
        if total == 0 {
            1.0
        } else {
            self.failures.len() as f64 / total as f64
        }
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Mean of a metric over one layout source.
    pub fn mean_score(&self, source: &str, metric: MetricId) -> Option<f64> {
        let values: Vec<f64> = self
            .records
            .iter()
            .filter_map(|r| r.source(source)?.value(metric))
            .collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    }
}

fn load_corpus(config: &ExperimentConfig) -> Result<Vec<CorpusGraph>> {
    match &config.corpus_dir {
        Some(dir) => load_corpus_dir(dir, config.seed),
        None => generate_corpus(&config.corpus, config.seed),
    }
}

/// Runs every trial, then builds the tables and checks.
///
/// Trials of different graphs run in parallel; a failing trial is recorded and
/// the run continues. Results are ordered by graph id, so the tables do not
/// depend on scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let corpus = load_corpus(config)?;
    let opts = MetricOptions {
        kk_l0: None,
        force: config.force,
    };
    let results: Vec<(String, Result<TrialRecord>)> = corpus
        .par_iter()
        .map(|entry| {
            let result = entry.graph.apsp().and_then(|d| {
                let layouts = standard_layouts(&entry.graph, &d, entry.seed, config.iterations)?;
                run_trial(
                    &entry.id,
                    &entry.graph,
                    &layouts,
                    &config.metrics,
                    config.policy,
                    &opts,
                )
            });
            (entry.id.clone(), result)
        })
        .collect();

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (graph_id, result) in results {
        match result {
            Ok(r) => records.push(r),
            Err(e) => {
                log::warn!("trial {graph_id} failed: {e}");
                failures.push(TrialFailure {
                    graph_id,
                    message: e.to_string(),
                });
            }
        }
    }
    records.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    failures.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));

    let frequencies = order_frequencies(&records, GROUND_TRUTH, &config.metrics)?;
    let correlations = if records.len() >= 2 {
        Some(metric_correlations(&records, &config.metrics)?)
    } else {
        None
    };
    let runtime = match &config.runtime {
        Some(spec) => Some(runtime_benchmark(spec, config.seed)?),
        None => None,
    };
    let mut outcome = ExperimentOutcome {
        config: config.clone(),
        records,
        failures,
        frequencies,
        correlations,
        runtime,
        checks: Vec::new(),
    };
    outcome.checks = standard_checks(&outcome);
    Ok(outcome)
}

/// Checks that apply to the metrics and policy of the run.
pub fn standard_checks(outcome: &ExperimentOutcome) -> Vec<Check> {
    let mut checks = Vec::new();
    let freq = &outcome.frequencies;
    for m in [MetricId::Sns, MetricId::Scs, MetricId::Nms] {
        if let Some(orders) = freq.get(m) {
            let f = orders.triple_frequency(&GROUND_TRUTH).unwrap_or(0.0);
            checks.push(Check::at_least(
                format!("{m} ground-truth frequency"),
                f,
                0.90,
            ));
        }
    }
    if outcome.config.policy == ScalePolicy::PaperLike {
        for m in [MetricId::Rs, MetricId::Ns, MetricId::Kks] {
            if let Some(orders) = freq.get(m) {
                checks.push(Check::at_least(
                    format!("{m} random-best frequency"),
                    orders.best_frequency(RANDOM),
                    0.95,
                ));
                checks.push(Check::at_most(
                    format!("{m} ground-truth frequency"),
                    orders.triple_frequency(&GROUND_TRUTH).unwrap_or(0.0),
                    0.05,
                ));
            }
        }
        if let Some(corr) = &outcome.correlations {
            let pairs = [
                (MetricId::Rs, MetricId::Ns, 0.9, true),
                (MetricId::Sns, MetricId::Nms, 0.8, true),
                (MetricId::Rs, MetricId::Sns, -0.2, false),
            ];
            for (a, b, bound, lower) in pairs {
                if !(outcome.config.metrics.contains(&a) && outcome.config.metrics.contains(&b)) {
                    continue;
                }
                let name = format!("spearman({a}, {b})");
                let r = corr.get(a, b).unwrap_or(f64::NAN);
                checks.push(if lower {
                    Check::at_least(name, r, bound)
                } else {
                    Check::at_most(name, r, bound)
                });
            }
        }
    }
    if outcome.config.metrics.contains(&MetricId::Sgs) {
        if let Some(v) = outcome.mean_score(OPTIMIZED, MetricId::Sgs) {
            checks.push(Check::greater("mean sgs of optimized".into(), v, 0.8));
        }
        if let Some(v) = outcome.mean_score(RANDOM, MetricId::Sgs) {
            checks.push(Check::less("mean sgs of random".into(), v, 0.4));
        }
    }
    checks
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn create(dir: &Path, name: String) -> Result<(PathBuf, BufWriter<File>)> {
    let path = dir.join(name);
    let file = File::create(&path)?;
    Ok((path, BufWriter::new(file)))
}

/// Per (graph, source, metric) scores, without timings.
pub fn write_scores_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "graph_id",
        "vertices",
        "edges",
        "source",
        "metric",
        "value",
        "alpha_min",
    ])?;
    for r in records {
        for l in &r.layouts {
            for (metric, score) in &l.scores {
                w.write_record([
                    r.graph_id.clone(),
                    r.vertices.to_string(),
                    r.edges.to_string(),
                    l.source.clone(),
                    metric.to_string(),
                    fmt_opt(score.value),
                    fmt_opt(score.alpha_min),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// One row per (metric, ordering): pairwise orderings, then full triples.
pub fn write_order_frequencies_csv<W: Write>(table: &OrderFrequencyTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["metric", "ordering", "count", "frequency", "graphs", "ties"])?;
    for m in &table.metrics {
        for c in m.pairwise.iter().chain(&m.triples) {
            w.write_record([
                m.metric.to_string(),
                c.label(),
                c.count.to_string(),
                c.frequency.to_string(),
                m.graphs.to_string(),
                m.ties.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_correlations_csv<W: Write>(table: &CorrelationTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["row_metric", "col_metric", "value"])?;
    for (i, a) in table.metrics.iter().enumerate() {
        for (j, b) in table.metrics.iter().enumerate() {
            w.write_record([a.to_string(), b.to_string(), fmt_opt(table.values[i][j])])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_runtime_csv<W: Write>(table: &RuntimeTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["vertices", "metric", "median_seconds", "batch", "slope"])?;
    for r in &table.rows {
        w.write_record([
            r.vertices.to_string(),
            r.metric.to_string(),
            r.median_seconds.to_string(),
            r.batch.to_string(),
            fmt_opt(table.slopes.get(&r.metric).copied()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a ExperimentConfig,
    graphs: usize,
    failures: &'a [TrialFailure],
    frequencies: &'a OrderFrequencyTable,
    correlations: &'a Option<CorrelationTable>,
    checks: &'a [Check],
}

/// Writes the score, order-frequency and correlation tables, a JSON summary
/// and, when benchmarked, the runtime table. Only the runtime table carries
/// wall-clock measurements. Returns the paths written.
pub fn write_outputs(outcome: &ExperimentOutcome, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let tag = outcome.config.tag();
    let mut written = Vec::new();

    let (path, mut f) = create(dir, format!("scores_{tag}.csv"))?;
    write_scores_csv(&outcome.records, &mut f)?;
    f.flush()?;
    written.push(path);

    let (path, mut f) = create(dir, format!("order_frequencies_{tag}.csv"))?;
    write_order_frequencies_csv(&outcome.frequencies, &mut f)?;
    f.flush()?;
    written.push(path);

    if let Some(corr) = &outcome.correlations {
        let (path, mut f) = create(dir, format!("correlations_{tag}.csv"))?;
        write_correlations_csv(corr, &mut f)?;
        f.flush()?;
        written.push(path);
    }

    let (path, mut f) = create(dir, format!("summary_{tag}.json"))?;
    let summary = Summary {
        config: &outcome.config,
        graphs: outcome.records.len(),
        failures: &outcome.failures,
        frequencies: &outcome.frequencies,
        correlations: &outcome.correlations,
        checks: &outcome.checks,
    };
    serde_json::to_writer_pretty(&mut f, &summary)?;
    f.write_all(b"\n")?;
    f.flush()?;
    written.push(path);

    if let Some(rt) = &outcome.runtime {
        let (path, mut f) = create(dir, format!("runtime_{tag}.csv"))?;
        write_runtime_csv(rt, &mut f)?;
        f.flush()?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_overrides() {
        let c = ExperimentConfig::from_toml("").unwrap();
        assert_eq!(c, ExperimentConfig::default());
        let c = ExperimentConfig::from_toml(
            "seed = 7\npolicy = \"as-is\"\nmetrics = [\"sns\", \"rs\", \"sns\"]\n[corpus]\ncount = 3\n",
        )
        .unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.policy, ScalePolicy::AsIs);
        assert_eq!(c.metrics, vec![MetricId::Rs, MetricId::Sns]);
        assert_eq!(c.corpus.count, 3);
        assert_eq!(c.corpus.min_vertices, 20);
        assert_eq!(c.tag(), "seed7_as-is");
    }

    #[test]
    fn config_rejects_unknown_keys_and_empty_metrics() {
        assert!(ExperimentConfig::from_toml("sed = 1").is_err());
        assert!(ExperimentConfig::from_toml("metrics = []").is_err());
        assert!(ExperimentConfig::from_toml("metrics = [\"xyz\"]").is_err());
    }

    #[test]
    fn small_run_produces_consistent_tables() {
        let config = ExperimentConfig {
            corpus: CorpusSpec {
                count: 6,
                min_vertices: 12,
                max_vertices: 20,
                ..CorpusSpec::default()
            },
            ..ExperimentConfig::default()
        };
        let outcome = run_experiment(&config).unwrap();
        assert_eq!(outcome.records.len(), 6);
        assert!(outcome.failures.is_empty());
        for m in &outcome.frequencies.metrics {
            assert_eq!(m.graphs, 6);
            let total: f64 = m.triples.iter().map(|c| c.frequency).sum();
            assert!((total - 1.0).abs() < 1e-12);
            for a in GROUND_TRUTH {
                for b in GROUND_TRUTH {
                    if a != b {
                        let sum = m.pair_frequency(a, b).unwrap() + m.pair_frequency(b, a).unwrap();
                        assert!((sum - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
        let corr = outcome.correlations.as_ref().unwrap();
        assert_eq!(corr.get(MetricId::Ns, MetricId::Ns), Some(1.0));
        assert!(!outcome.checks.is_empty());
    }
}
