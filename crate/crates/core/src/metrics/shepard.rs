//! Metrics read off the Shepard diagram, the scatter of `(e_ij, d_ij)` over all
//! vertex pairs.

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::layout::LayoutDistances;
use crate::pairs::csum;
use crate::stats::{isotonic_regression, spearman_tol};

use super::check_dims;

/// Relative gap below which two distances rank as tied in the goodness score.
pub const SHEPARD_TIE_TOLERANCE: f64 = 1e-9;

/// Spearman correlation between layout and graph distances over all pairs.
///
/// Distances within [`SHEPARD_TIE_TOLERANCE`] of the largest one are ranked as
/// ties, so symmetric drawings score the same at every scale.
pub fn shepard_goodness(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    if e.n() < 3 {
        return Err(Error::TooFewVertices {
            required: 3,
            found: e.n(),
        });
    }
    spearman_tol(e.values(), d.values(), SHEPARD_TIE_TOLERANCE)
}

/// Normalized stress after scaling layout distances by `max d / max e`.
pub fn shepard_constant_stress(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    let max_e = e.max();
    if max_e <= 0.0 {
        return Err(Error::DegenerateLayout("all layout distances are zero"));
    }
    let beta = d.max() / max_e;
    Ok(csum(e.values().iter().zip(d.values()).map(|(&e, &d)| {
        let r = beta * e - d;
        r * r / (d * d)
    })))
}

/// Kruskal stress-1 against an isotonic fit of the Shepard diagram.
pub fn nonmetric_stress(e: &LayoutDistances, d: &DistanceMatrix) -> Result<f64> {
    check_dims(e, d)?;
    nonmetric_stress_from_pairs(e.values(), d.values())
}

/// [`nonmetric_stress`] over parallel lists of pair distances.
///
/// Pairs are ordered by `d` ascending, then `e` ascending, then position; the
/// disparities are the isotonic regression of `e` in that order.
pub fn nonmetric_stress_from_pairs(e: &[f64], d: &[f64]) -> Result<f64> {
    if e.len() != d.len() {
        return Err(Error::InvalidArgument(format!(
            "{} layout distances for {} graph distances",
            e.len(),
            d.len()
        )));
    }
    if e.is_empty() {
        return Err(Error::TooFewVertices {
            required: 2,
            found: 1,
        });
    }
    let total = csum(e.iter().map(|&x| x * x));
    if total == 0.0 {
        return Err(Error::DegenerateLayout("all layout distances are zero"));
    }
    let mut order: Vec<usize> = (0..e.len()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(e[a].total_cmp(&e[b])));
    let sorted_e: Vec<f64> = order.iter().map(|&k| e[k]).collect();
    let fit = isotonic_regression(&sorted_e, None)?.fitted;
    let residual = csum(sorted_e.iter().zip(&fit).map(|(&x, &f)| (x - f) * (x - f)));
    Ok((residual / total).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::Layout;

    fn p3() -> DistanceMatrix {
        DistanceMatrix::from_square(&[vec![0., 1., 2.], vec![1., 0., 1.], vec![2., 1., 0.]])
            .unwrap()
    }

    fn line(xs: &[f64]) -> LayoutDistances {
        Layout::new(xs.iter().map(|&x| [x, 0.0]).collect())
            .unwrap()
            .pairwise_distances()
            .unwrap()
    }

    #[test]
    fn perfect_layout() {
        let d = p3();
        let e = line(&[0., 1., 2.]);
        assert!((shepard_goodness(&e, &d).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(shepard_constant_stress(&e, &d).unwrap(), 0.0);
        assert_eq!(nonmetric_stress(&e, &d).unwrap(), 0.0);
    }

    #[test]
    fn scs_hand_value() {
        // beta = 2 / 4 restores the perfect drawing
        assert_eq!(
            shepard_constant_stress(&line(&[0., 2., 4.]), &p3()).unwrap(),
            0.0
        );
        assert!(matches!(
            shepard_constant_stress(&line(&[1., 1., 1.]), &p3()),
            Err(Error::DegenerateLayout(_))
        ));
    }

    #[test]
    fn nms_anti_monotone_pair() {
        // fit of (2, 1) pools to (1.5, 1.5): residual 0.5 over total 5
        let v = nonmetric_stress_from_pairs(&[2.0, 1.0], &[1.0, 2.0]).unwrap();
        assert!((v - (0.5f64 / 5.0).sqrt()).abs() < 1e-15);
        assert!((v - 0.3162).abs() < 1e-4);
    }

    #[test]
    fn nms_tie_order_uses_layout_distance() {
        // equal d: e sorted ascending inside the tie group, so no violation
        assert_eq!(
            nonmetric_stress_from_pairs(&[3.0, 1.0], &[1.0, 1.0]).unwrap(),
            0.0
        );
    }

    #[test]
    fn sgs_errors() {
        let d = DistanceMatrix::from_square(&[vec![0., 1.], vec![1., 0.]]).unwrap();
        assert!(shepard_goodness(&line(&[0., 1.]), &d).is_err());
        let k3 =
            DistanceMatrix::from_square(&[vec![0., 1., 1.], vec![1., 0., 1.], vec![1., 1., 0.]])
                .unwrap();
        assert!(matches!(
            shepard_goodness(&line(&[0., 1., 3.]), &k3),
            Err(Error::UndefinedCorrelation)
        ));
    }
}
