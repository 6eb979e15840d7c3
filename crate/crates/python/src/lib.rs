//! Python bindings: graphs, layouts, the eight metrics and scale analysis.

use std::collections::BTreeMap;

use graph_stress::metrics::{
    ns_alpha_intersection, ns_alpha_min, rs_alpha_intersection, rs_alpha_min, stress_curve,
};
use graph_stress::{
    evaluate, DistanceMatrix, Error, Graph, Layout, LayoutDistances, MetricId, MetricOptions,
};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn layout(positions: Vec<[f64; 2]>) -> PyResult<Layout> {
    Layout::new(positions).map_err(err)
}

fn distances(positions: Vec<[f64; 2]>) -> PyResult<LayoutDistances> {
    layout(positions)?.pairwise_distances().map_err(err)
}

fn metric_id(name: &str) -> PyResult<MetricId> {
    name.parse().map_err(err)
}

/// Undirected simple graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen, module = "graphstress")]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: Graph::new(n, edges).map_err(err)?,
        })
    }

    /// Parses the whitespace edge-list format. Self-loops are dropped.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let (inner, _) = Graph::parse_edge_list(text).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_matrix_market(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: Graph::parse_matrix_market(text).map_err(err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// Returns the largest component and the original id of each of its vertices.
    fn largest_component(&self) -> PyResult<(PyGraph, Vec<usize>)> {
        let c = self.inner.largest_connected_component().map_err(err)?;
        Ok((PyGraph { inner: c.graph }, c.original_ids))
    }

    /// Hop distances as a square list of lists.
    fn apsp(&self) -> PyResult<Vec<Vec<f64>>> {
        Ok(self.inner.apsp().map_err(err)?.matrix().to_square())
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Scores layouts of one connected graph; graph distances are computed once.
#[pyclass(frozen, module = "graphstress")]
struct Evaluator {
    graph: Graph,
    d: DistanceMatrix,
}

#[pymethods]
impl Evaluator {
    #[new]
    fn new(graph: &PyGraph) -> PyResult<Self> {
        let d = graph.inner.apsp().map_err(err)?;
        Ok(Self {
            graph: graph.inner.clone(),
            d,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.d.n()
    }

    /// Value of one metric (`rs`, `kks`, `ns`, `sns`, `sgs`, `scs`, `drs`, `nms`).
    #[pyo3(signature = (name, positions, l0=None, force=false))]
    fn metric(
        &self,
        name: &str,
        positions: Vec<[f64; 2]>,
        l0: Option<f64>,
        force: bool,
    ) -> PyResult<f64> {
        let opts = MetricOptions { kk_l0: l0, force };
        Ok(
            evaluate(metric_id(name)?, &distances(positions)?, &self.d, &opts)
                .map_err(err)?
                .value,
        )
    }

    /// Several metrics at once; all eight when `names` is omitted.
    #[pyo3(signature = (positions, names=None, force=false))]
    fn metrics(
        &self,
        positions: Vec<[f64; 2]>,
        names: Option<Vec<String>>,
        force: bool,
    ) -> PyResult<BTreeMap<String, f64>> {
        let e = distances(positions)?;
        let ids = match names {
            Some(ns) => ns
                .iter()
                .map(|n| metric_id(n))
                .collect::<PyResult<Vec<_>>>()?,
            None => MetricId::ALL.to_vec(),
        };
        let opts = MetricOptions { kk_l0: None, force };
        ids.into_iter()
            .map(|m| {
                let v = evaluate(m, &e, &self.d, &opts).map_err(err)?;
                Ok((m.to_string(), v.value))
            })
            .collect()
    }

    /// Scale minimizing normalized (`kind="ns"`) or raw (`kind="rs"`) stress.
    #[pyo3(signature = (positions, kind="ns"))]
    fn alpha_min(&self, positions: Vec<[f64; 2]>, kind: &str) -> PyResult<f64> {
        let e = distances(positions)?;
        match metric_id(kind)? {
            MetricId::Ns => ns_alpha_min(&e, &self.d),
            MetricId::Rs => rs_alpha_min(&e, &self.d),
            other => {
                return Err(PyValueError::new_err(format!(
                    "no closed-form optimum for {other}"
                )))
            }
        }
        .map_err(err)
    }

    /// Positive scale at which two layouts tie, or `None`.
    #[pyo3(signature = (first, second, kind="ns"))]
    fn intersection(
        &self,
        first: Vec<[f64; 2]>,
        second: Vec<[f64; 2]>,
        kind: &str,
    ) -> PyResult<Option<f64>> {
        let (a, b) = (distances(first)?, distances(second)?);
        match metric_id(kind)? {
            MetricId::Ns => ns_alpha_intersection(&a, &b, &self.d),
            MetricId::Rs => rs_alpha_intersection(&a, &b, &self.d),
            other => {
                return Err(PyValueError::new_err(format!(
                    "no closed-form crossing for {other}"
                )))
            }
        }
        .map_err(err)
    }

    /// `(alpha, value)` for each scale factor.
    #[pyo3(signature = (positions, metric, alphas, l0=None))]
    fn curve(
        &self,
        positions: Vec<[f64; 2]>,
        metric: &str,
        alphas: Vec<f64>,
        l0: Option<f64>,
    ) -> PyResult<Vec<(f64, f64)>> {
        let opts = MetricOptions {
            kk_l0: l0,
            force: false,
        };
        let pts = stress_curve(
            &layout(positions)?,
            &self.d,
            metric_id(metric)?,
            &alphas,
            &opts,
        )
        .map_err(err)?;
        Ok(pts.into_iter().map(|p| (p.alpha, p.value)).collect())
    }

    /// Stress-optimized layout of the evaluator's graph.
    #[pyo3(signature = (seed, iterations=100))]
    fn optimize_layout(&self, seed: u64, iterations: usize) -> PyResult<Vec<[f64; 2]>> {
        let x =
            graph_stress::optimize_layout(&self.graph, &self.d, seed, iterations).map_err(err)?;
        Ok(x.positions().to_vec())
    }
}

#[pyfunction]
fn spearman(xs: Vec<f64>, ys: Vec<f64>) -> PyResult<f64> {
    graph_stress::stats::spearman(&xs, &ys).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (ys, weights=None))]
fn isotonic_regression(ys: Vec<f64>, weights: Option<Vec<f64>>) -> PyResult<Vec<f64>> {
    Ok(
        graph_stress::stats::isotonic_regression(&ys, weights.as_deref())
            .map_err(err)?
            .fitted,
    )
}

#[pyfunction]
fn random_layout(n: usize, seed: u64) -> Vec<[f64; 2]> {
    graph_stress::random_layout(n, seed).positions().to_vec()
}

#[pyfunction]
fn circle_layout(n: usize) -> PyResult<Vec<[f64; 2]>> {
    Ok(graph_stress::circle_layout(n)
        .map_err(err)?
        .positions()
        .to_vec())
}

#[pyfunction]
fn metric_ids() -> Vec<&'static str> {
    MetricId::ALL.iter().map(|m| m.as_str()).collect()
}

#[pymodule]
fn graphstress(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<Evaluator>()?;
    m.add_function(wrap_pyfunction!(spearman, m)?)?;
    m.add_function(wrap_pyfunction!(isotonic_regression, m)?)?;
    m.add_function(wrap_pyfunction!(random_layout, m)?)?;
    m.add_function(wrap_pyfunction!(circle_layout, m)?)?;
    m.add_function(wrap_pyfunction!(metric_ids, m)?)?;
    Ok(())
}
