//! The eight stress metrics and closed-form scale analysis.
//!
//! Every metric compares layout distances `e_ij` with graph distances `d_ij`
//! over unordered vertex pairs. Raw, Kamada-Kawai and normalized stress depend
//! on the drawing's scale; the remaining five do not.

mod ratio;
mod scale;
mod shepard;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::layout::{Layout, LayoutDistances};

pub use ratio::{distance_ratio_stress, DRS_SIZE_LIMIT};
pub use scale::{
    kk_stress, normalized_stress, ns_alpha_intersection, ns_alpha_min, ns_quadratic,
    ns_scale_analysis, raw_stress, raw_stress_quadratic, rs_alpha_intersection, rs_alpha_min,
    rs_scale_analysis, scale_normalized_stress, KKParams, QuadraticStressForm, ScaleAnalysis,
};
pub use shepard::{
    nonmetric_stress, nonmetric_stress_from_pairs, shepard_constant_stress, shepard_goodness,
    SHEPARD_TIE_TOLERANCE,
};

pub(crate) fn check_dims(e: &LayoutDistances, d: &DistanceMatrix) -> Result<()> {
    if e.n() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            found: e.n(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricId {
    Rs,
    Kks,
    Ns,
    Sns,
    Sgs,
    Scs,
    Drs,
    Nms,
}

impl MetricId {
    pub const ALL: [MetricId; 8] = [
        MetricId::Rs,
        MetricId::Kks,
        MetricId::Ns,
        MetricId::Sns,
        MetricId::Sgs,
        MetricId::Scs,
        MetricId::Drs,
        MetricId::Nms,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricId::Rs => "rs",
            MetricId::Kks => "kks",
            MetricId::Ns => "ns",
            MetricId::Sns => "sns",
            MetricId::Sgs => "sgs",
            MetricId::Scs => "scs",
            MetricId::Drs => "drs",
            MetricId::Nms => "nms",
        }
    }

    /// Only the Shepard goodness score rewards larger values.
    pub fn higher_is_better(self) -> bool {
        self == MetricId::Sgs
    }

    pub fn is_scale_invariant(self) -> bool {
        !matches!(self, MetricId::Rs | MetricId::Kks | MetricId::Ns)
    }

    /// Parses a comma-separated list such as `"ns,sns"`.
    pub fn parse_list(s: &str) -> Result<Vec<MetricId>> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let id = if tok.eq_ignore_ascii_case("all") {
                out.extend(MetricId::ALL);
                continue;
            } else {
                tok.parse::<MetricId>()?
            };
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument("no metrics requested".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MetricOptions {
    /// Kamada-Kawai `L0` override; defaults to the largest drawing distance.
    pub kk_l0: Option<f64>,
    /// Evaluate distance ratio stress beyond [`DRS_SIZE_LIMIT`].
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub value: f64,
    /// Optimal scale, reported for rs, ns and sns.
    pub alpha_min: Option<f64>,
}

/// Scores one layout under one metric.
pub fn evaluate(
    metric: MetricId,
    e: &LayoutDistances,
    d: &DistanceMatrix,
    opts: &MetricOptions,
) -> Result<MetricValue> {
    let plain = |value| MetricValue {
        value,
        alpha_min: None,
    };
    Ok(match metric {
        MetricId::Rs => MetricValue {
            value: raw_stress(e, d)?,
            alpha_min: rs_alpha_min(e, d).ok(),
        },
        MetricId::Kks => plain(kk_stress(e, d, KKParams { l0: opts.kk_l0 })?),
        MetricId::Ns => MetricValue {
            value: normalized_stress(e, d)?,
            alpha_min: ns_alpha_min(e, d).ok(),
        },
        MetricId::Sns => {
            let (value, alpha) = scale_normalized_stress(e, d)?;
            MetricValue {
                value,
                alpha_min: Some(alpha),
            }
        }
        MetricId::Sgs => plain(shepard_goodness(e, d)?),
        MetricId::Scs => plain(shepard_constant_stress(e, d)?),
        MetricId::Drs => plain(distance_ratio_stress(e, d, opts.force)?),
        MetricId::Nms => plain(nonmetric_stress(e, d)?),
    })
}

/// One sample of a stress-versus-scale curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub alpha: f64,
    pub value: f64,
    /// Quadratic-form prediction, for rs and ns.
    pub quadratic: Option<f64>,
}

/// Evaluates `metric(alpha * X, D)` for each sample.
///
/// For Kamada-Kawai stress an explicit `L0` is taken at the unscaled drawing and
/// travels with it, so `L0(alpha) = alpha * L0`.
pub fn stress_curve(
    layout: &Layout,
    d: &DistanceMatrix,
    metric: MetricId,
    alphas: &[f64],
    opts: &MetricOptions,
) -> Result<Vec<CurvePoint>> {
    let e = layout.pairwise_distances()?;
    check_dims(&e, d)?;
    let quadratic = match metric {
        MetricId::Rs => Some(raw_stress_quadratic(&e, d)?),
        MetricId::Ns => Some(ns_quadratic(&e, d)?),
        _ => None,
    };
    alphas
        .iter()
        .map(|&alpha| {
            let scaled = e.scaled(alpha)?;
            let opts = MetricOptions {
                kk_l0: opts.kk_l0.map(|l0| l0 * alpha),
                ..*opts
            };
            let value = evaluate(metric, &scaled, d, &opts)?.value;
            let predicted = quadratic.map(|q| q.evaluate(alpha));
            if let Some(p) = predicted {
                let tol = 1e-9 * (1.0 + value.abs());
                if (p - value).abs() > tol {
                    log::warn!(
                        "{metric} quadratic form disagrees at alpha={alpha}: {p} vs {value}"
                    );
                }
            }
            Ok(CurvePoint {
                alpha,
                value,
                quadratic: predicted,
            })
        })
        .collect()
}
