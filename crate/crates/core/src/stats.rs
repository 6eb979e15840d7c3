//! Rank statistics and monotone regression.

use crate::error::{Error, Result};

/// Values with their 1-based average ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSeries {
    pub values: Vec<f64>,
    pub ranks: Vec<f64>,
}

/// Assigns 1-based ranks, averaging over groups of equal values.
pub fn average_ranks(values: &[f64]) -> Result<RankedSeries> {
    average_ranks_tol(values, 0.0)
}

/// Like [`average_ranks`], but a value within `rel_tol * max|v|` of the smallest
/// member of its group joins the group. Absorbs rounding noise in quantities
/// that are equal in exact arithmetic.
pub fn average_ranks_tol(values: &[f64], rel_tol: f64) -> Result<RankedSeries> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot rank an empty series".into()));
    }
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index, value });
    }
    if !(rel_tol >= 0.0 && rel_tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tie tolerance {rel_tol}")));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let width = rel_tol * values.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let first = values[order[start]];
        let mut end = start + 1;
        while end < order.len() && values[order[end]] - first <= width {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    Ok(RankedSeries {
        values: values.to_vec(),
        ranks,
    })
}

/// Pearson correlation; errors when either series has zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "series lengths differ ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "correlation needs at least two points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation: Pearson correlation of average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    spearman_tol(xs, ys, 0.0)
}

/// Spearman correlation with ties detected by [`average_ranks_tol`].
pub fn spearman_tol(xs: &[f64], ys: &[f64], rel_tol: f64) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "series lengths differ ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    let rx = average_ranks_tol(xs, rel_tol)?;
    let ry = average_ranks_tol(ys, rel_tol)?;
    pearson(&rx.ranks, &ry.ranks)
}

/// Least-squares non-decreasing fit.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotonicFit {
    pub fitted: Vec<f64>,
}

/// Weighted isotonic regression by pool-adjacent-violators.
///
/// Minimizes `sum w_k (fit_k - y_k)^2` subject to `fit` non-decreasing, in one
/// left-to-right pass with a block stack.
pub fn isotonic_regression(ys: &[f64], weights: Option<&[f64]>) -> Result<IsotonicFit> {
    if ys.is_empty() {
        return Err(Error::InvalidArgument(
            "isotonic regression of an empty series".into(),
        ));
    }
    if let Some(w) = weights {
        if w.len() != ys.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} values",
                w.len(),
                ys.len()
            )));
        }
        if let Some((i, &bad)) = w
            .iter()
            .enumerate()
            .find(|(_, &x)| !(x > 0.0 && x.is_finite()))
        {
            return Err(Error::InvalidArgument(format!(
                "weight {i} is {bad}, must be positive"
            )));
        }
    }
    if let Some((index, &value)) = ys.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index, value });
    }

    struct Block {
        mean: f64,
        weight: f64,
        len: usize,
    }
    let mut blocks: Vec<Block> = Vec::with_capacity(ys.len());
    for (k, &y) in ys.iter().enumerate() {
        let mut cur = Block {
            mean: y,
            weight: weights.map_or(1.0, |w| w[k]),
            len: 1,
        };
        while let Some(prev) = blocks.last() {
            if prev.mean <= cur.mean {
                break;
            }
            let prev = blocks.pop().unwrap();
            let weight = prev.weight + cur.weight;
            cur = Block {
                mean: (prev.mean * prev.weight + cur.mean * cur.weight) / weight,
                weight,
                len: prev.len + cur.len,
            };
        }
        blocks.push(cur);
    }
    let mut fitted = Vec::with_capacity(ys.len());
    for b in &blocks {
        fitted.extend(std::iter::repeat_n(b.mean, b.len));
    }
    Ok(IsotonicFit { fitted })
}
