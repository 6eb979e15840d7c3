//! Distance ratio stress: compares ratios of layout distances with ratios of
//! graph distances over every ordered pair of vertex pairs. Quartic in `n`.

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::layout::LayoutDistances;
use crate::pairs::CompensatedSum;

use super::check_dims;

/// Largest vertex count evaluated without `force`.
pub const DRS_SIZE_LIMIT: usize = 64;

/// `sum_{(i<j), (k<l)} (e_ij / e_kl - d_ij / d_kl)^2`.
pub fn distance_ratio_stress(e: &LayoutDistances, d: &DistanceMatrix, force: bool) -> Result<f64> {
    check_dims(e, d)?;
    let n = e.n();
    if n > DRS_SIZE_LIMIT && !force {
        return Err(Error::SizeGuard {
            metric: "drs",
            n,
            limit: DRS_SIZE_LIMIT,
        });
    }
    if e.values().contains(&0.0) {
        return Err(Error::DegenerateLayout(
            "coincident vertices make distance ratios undefined",
        ));
    }
    Ok(ratio_sum(e.values(), d.values()))
}

fn ratio_sum(e: &[f64], d: &[f64]) -> f64 {
    let inv_e: Vec<f64> = e.iter().map(|v| 1.0 / v).collect();
    let inv_d: Vec<f64> = d.iter().map(|v| 1.0 / v).collect();
    let mut total = CompensatedSum::default();
    let term = |ep: f64, dp: f64, ie: &f64, id: &f64| {
        let r = ep * ie - dp * id;
        r * r
    };
    for (p, (&ep, &dp)) in e.iter().zip(d).enumerate() {
        // the p == q term vanishes exactly; skip it rather than sum rounding noise
        let before: f64 = inv_e[..p]
            .iter()
            .zip(&inv_d[..p])
            .map(|(ie, id)| term(ep, dp, ie, id))
            .sum();
        let after: f64 = inv_e[p + 1..]
            .iter()
            .zip(&inv_d[p + 1..])
            .map(|(ie, id)| term(ep, dp, ie, id))
            .sum();
        total.add(before + after);
    }
    total.total()
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
    fn zero_when_ratios_preserved() {
        assert_eq!(
            distance_ratio_stress(&line(&[0., 1., 2.]), &p3(), false).unwrap(),
            0.0
        );
        assert_eq!(
            distance_ratio_stress(&line(&[0., 2., 4.]), &p3(), false).unwrap(),
            0.0
        );
    }

    #[test]
    fn coincident_points_rejected() {
        assert!(matches!(
            distance_ratio_stress(&line(&[0., 0., 2.]), &p3(), false),
            Err(Error::DegenerateLayout(_))
        ));
    }

    #[test]
    fn size_guard() {
        let n = DRS_SIZE_LIMIT + 1;
        let layout = crate::layout::random_layout(n, 1);
        let e = layout.pairwise_distances().unwrap();
        let g = crate::graph::Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap();
        let d = g.apsp().unwrap();
        assert!(matches!(
            distance_ratio_stress(&e, &d, false),
            Err(Error::SizeGuard { n: 65, .. })
        ));
        assert!(distance_ratio_stress(&e, &d, true).unwrap() > 0.0);
    }
}
