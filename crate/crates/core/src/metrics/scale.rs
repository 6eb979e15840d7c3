//! Scale-sensitive stresses (raw, Kamada-Kawai, normalized) and their behaviour
//! under a uniform scale factor `alpha`.
//!
//! Raw and normalized stress of `alpha * X` are quadratics in `alpha` that share
//! their constant term across layouts of the same graph, so the minimizing scale
//! and the positive crossing of two layouts' curves have closed forms.

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::layout::LayoutDistances;
use crate::pairs::csum;

use super::check_dims;

/// `stress(alpha) = a*alpha^2 + b*alpha + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticStressForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticStressForm {
    pub fn evaluate(&self, alpha: f64) -> f64 {
        (self.a * alpha + self.b) * alpha + self.c
    }

    /// Vertex `-b / 2a`; `None` when the layout is collapsed (`a == 0`).
    pub fn argmin(&self) -> Option<f64> {
        (self.a > 0.0).then(|| -self.b / (2.0 * self.a))
    }

    /// Nonzero `alpha` where two forms with equal `c` meet.
    pub fn crossing(&self, other: &QuadraticStressForm) -> Option<f64> {
        let denom = self.a - other.a;
        (denom != 0.0).then(|| (other.b - self.b) / denom)
    }
}

/// Closed-form optimum of a quadratic stress curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleAnalysis {
    pub alpha_min: f64,
    pub stress_at_min: f64,
    pub quadratic: QuadraticStressForm,
}

/// Length constant for Kamada-Kawai stress.
///
/// `l0` defaults to the layout's largest pairwise distance; `L = l0 / max d_ij`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KKParams {
    pub l0: Option<f64>,
}

impl KKParams {
    pub fn with_l0(l0: f64) -> Self {
        Self { l0: Some(l0) }
    }

    /// Resolves `(L0, L)` for a layout/graph pair.
    pub fn resolve(&self, e: &LayoutDistances, d: &DistanceMatrix) -> Result<(f64, f64)> {
        let l0 = match self.l0 {
            Some(v) if v > 0.0 && v.is_finite() => v,
            Some(v) => {
                return Err(Error::InvalidArgument(format!(
                    "L0 must be positive, got {v}"
                )))
            }
            None => e.max(),
        };
        Ok((l0, l0 / d.max()))
    }
}

/// `sum_{i<j} (e_ij - d_ij)^2`.
pub fn raw_stress(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    Ok(csum(
        e.values()
            .iter()
            .zip(d.values())
            .map(|(&e, &d)| (e - d) * (e - d)),
    ))
}

pub fn raw_stress_quadratic(
    e: &LayoutDistances,
    d: &DistanceMatrix,
) -> Result<QuadraticStressForm> {
    check_dims(e, d)?;
    let pairs = || e.values().iter().zip(d.values());
    Ok(QuadraticStressForm {
        a: csum(e.values().iter().map(|&e| e * e)),
        b: -2.0 * csum(pairs().map(|(&e, &d)| e * d)),
        c: csum(d.values().iter().map(|&d| d * d)),
    })
}

/// Scale minimizing raw stress: `sum e*d / sum e^2`.
pub fn rs_alpha_min(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    let den = csum(e.values().iter().map(|&e| e * e));
    if den == 0.0 {
        return Err(Error::DegenerateLayout("all layout distances are zero"));
    }
    let num = csum(e.values().iter().zip(d.values()).map(|(&e, &d)| e * d));
    Ok(num / den)
}

pub fn rs_scale_analysis(e: &LayoutDistances, d: &DistanceMatrix) -> Result<ScaleAnalysis> {
    let alpha_min = rs_alpha_min(e, d)?;
    Ok(ScaleAnalysis {
        alpha_min,
        stress_at_min: raw_stress(&e.scaled(alpha_min)?, d)?,
        quadratic: raw_stress_quadratic(e, d)?,
    })
}

fn non_degenerate(e: &LayoutDistances) -> Result<()> {
    if e.max() > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateLayout("all layout distances are zero"))
    }
}

/// Positive scale where two layouts have equal raw stress.
///
/// `None` when the curves share their leading coefficient or cross only at
/// `alpha <= 0`.
pub fn rs_alpha_intersection(
    e1: &LayoutDistances,
    e2: &LayoutDistances,
    d: &DistanceMatrix,
) -> Result<Option<f64>> {
    check_dims(e1, d)?;
    check_dims(e2, d)?;
    non_degenerate(e1)?;
    non_degenerate(e2)?;
    let triples = || e1.values().iter().zip(e2.values()).zip(d.values());
    let num = 2.0 * csum(triples().map(|((&a, &b), &d)| d * (a - b)));
    let den = csum(triples().map(|((&a, &b), _)| a * a - b * b));
    let scale = csum(e1.values().iter().map(|&a| a * a));
    Ok(positive_root(num, den, scale))
}

fn positive_root(num: f64, den: f64, scale: f64) -> Option<f64> {
    if den.abs() < 1e-12 * scale {
        return None;
    }
    let alpha = num / den;
    (alpha > 0.0 && alpha.is_finite()).then_some(alpha)
}

/// `sum_{i<j} d_ij^-2 (e_ij - L d_ij)^2`.
pub fn kk_stress(e: &LayoutDistances, d: &DistanceMatrix, params: KKParams) -> Result<f64> {
    check_dims(e, d)?;
    let (_, l) = params.resolve(e, d)?;
    Ok(csum(e.values().iter().zip(d.values()).map(|(&e, &d)| {
        let r = e - l * d;
        r * r / (d * d)
    })))
}

/// `sum_{i<j} d_ij^-2 (e_ij - d_ij)^2`.
pub fn normalized_stress(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    Ok(ns_at(e.values(), d.values(), 1.0))
}

fn ns_at(e: &[f64], d: &[f64], alpha: f64) -> f64 {
    csum(e.iter().zip(d).map(|(&e, &d)| {
        let r = alpha * e - d;
        r * r / (d * d)
    }))
}

pub fn ns_quadratic(e: &LayoutDistances, d: &DistanceMatrix) -> Result<QuadraticStressForm> {
    check_dims(e, d)?;
    let pairs = || e.values().iter().zip(d.values());
    Ok(QuadraticStressForm {
        a: csum(pairs().map(|(&e, &d)| e * e / (d * d))),
        b: -2.0 * csum(pairs().map(|(&e, &d)| e / d)),
        c: d.values().len() as f64,
    })
}

/// Scale minimizing normalized stress: `sum e/d / sum e^2/d^2`.
pub fn ns_alpha_min(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    ns_alpha_min_raw(e.values(), d.values())
}

fn ns_alpha_min_raw(e: &[f64], d: &[f64]) -> Result<f64> {
    let den = csum(e.iter().zip(d).map(|(&e, &d)| e * e / (d * d)));
    if den == 0.0 {
        return Err(Error::DegenerateLayout("all layout distances are zero"));
    }
    let num = csum(e.iter().zip(d).map(|(&e, &d)| e / d));
    Ok(num / den)
}

pub fn ns_scale_analysis(e: &LayoutDistances, d: &DistanceMatrix) -> Result<ScaleAnalysis> {
    let (stress_at_min, alpha_min) = scale_normalized_stress(e, d)?;
    Ok(ScaleAnalysis {
        alpha_min,
        stress_at_min,
        quadratic: ns_quadratic(e, d)?,
    })
}

/// Positive scale where two layouts have equal normalized stress.
pub fn ns_alpha_intersection(
    e1: &LayoutDistances,
    e2: &LayoutDistances,
    d: &DistanceMatrix,
) -> Result<Option<f64>> {
    check_dims(e1, d)?;
    check_dims(e2, d)?;
    non_degenerate(e1)?;
    non_degenerate(e2)?;
    let triples = || e1.values().iter().zip(e2.values()).zip(d.values());
    let num = 2.0 * csum(triples().map(|((&a, &b), &d)| (a - b) / d));
    let den = csum(triples().map(|((&a, &b), &d)| (a * a - b * b) / (d * d)));
    let scale = csum(
        e1.values()
            .iter()
            .zip(d.values())
            .map(|(&a, &d)| a * a / (d * d)),
    );
    Ok(positive_root(num, den, scale))
}

/// Normalized stress at its optimal scale. Returns `(value, alpha_min)`.
pub fn scale_normalized_stress(e: &LayoutDistances, d: &DistanceMatrix) -> Result<(f64, f64)> {
    check_dims(e, d)?;
    let alpha = ns_alpha_min_raw(e.values(), d.values())?;
    Ok((ns_at(e.values(), d.values(), alpha), alpha))
}
