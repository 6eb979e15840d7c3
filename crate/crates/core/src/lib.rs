//! Stress-based quality metrics for graph layouts.
//!
//! The crate computes raw, Kamada-Kawai, normalized and scale-normalized stress,
//! the Shepard goodness score, Shepard constant stress, distance ratio stress and
//! non-metric stress, together with the closed-form optimal and crossing scale
//! factors of the scale-sensitive ones. An experiment harness scores layouts of
//! generated graphs and tabulates how often each metric orders them correctly.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod layout;
pub mod metrics;
pub mod pairs;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{ComponentExtraction, DistanceMatrix, Graph};
pub use layout::{circle_layout, optimize_layout, random_layout, Layout, LayoutDistances};
pub use metrics::{evaluate, MetricId, MetricOptions, MetricValue};
