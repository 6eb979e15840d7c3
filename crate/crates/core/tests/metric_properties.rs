mod common;

use approx::assert_relative_eq;
use common::{dist, line_layout, p3, random_connected_graph, random_points, rel_close, rng};
use graph_stress::experiment::standard_layouts;
use graph_stress::metrics::*;
use graph_stress::pairs::CondensedMatrix;
use graph_stress::{DistanceMatrix, Graph, Layout, LayoutDistances};

struct Instance {
    d: DistanceMatrix,
    layout: Layout,
}

fn instances(count: usize, seed: u64) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let n = 4 + k % 30;
            let g = random_connected_graph(n, 0.1, &mut r);
            let spread = [0.05, 1.0, 20.0, 900.0][k % 4];
            Instance {
                d: g.apsp().unwrap(),
                layout: random_points(n, spread, &mut r),
            }
        })
        .collect()
}

fn direct(metric: MetricId, e: &LayoutDistances, d: &DistanceMatrix) -> f64 {
    evaluate(metric, e, d, &MetricOptions::default())
        .unwrap()
        .value
}

#[test]
fn zero_at_perfection() {
    let mut r = rng(8);
    for n in [3, 7, 20] {
        let g = random_connected_graph(n, 0.2, &mut r);
        let d = g.apsp().unwrap();
        let e =
            LayoutDistances::new(CondensedMatrix::new(n, d.values().to_vec()).unwrap()).unwrap();
        for m in MetricId::ALL {
            let v = direct(m, &e, &d);
            match m {
                MetricId::Sgs => assert_eq!(v, 1.0),
                // L0 = max e, so L = 1 and the targets are d itself
                _ => assert!(v.abs() < 1e-12, "{m} = {v}"),
            }
        }
    }
}

#[test]
fn p3_hand_values() {
    let (_, d) = p3();
    let x = dist(&line_layout(3, 1.0));
    let x2 = dist(&line_layout(3, 2.0));
    assert_eq!(raw_stress(&x, &d).unwrap(), 0.0);
    assert_eq!(normalized_stress(&x, &d).unwrap(), 0.0);
    assert_relative_eq!(raw_stress(&x2, &d).unwrap(), 6.0, max_relative = 1e-12);
    assert_relative_eq!(
        normalized_stress(&x2, &d).unwrap(),
        3.0,
        max_relative = 1e-12
    );
    assert_eq!(scale_normalized_stress(&x2, &d).unwrap(), (0.0, 0.5));
    assert_eq!(rs_alpha_min(&x2, &d).unwrap(), 0.5);
    assert_eq!(shepard_constant_stress(&x2, &d).unwrap(), 0.0);
    assert_eq!(kk_stress(&x2, &d, KKParams::default()).unwrap(), 0.0);
    let q = raw_stress_quadratic(&x, &d).unwrap();
    assert_eq!((q.a, q.b, q.c), (6.0, -12.0, 6.0));
    let q = ns_quadratic(&x, &d).unwrap();
    assert_eq!((q.a, q.b, q.c), (3.0, -6.0, 3.0));
    let odd = dist(&Layout::new(vec![[0., 0.], [1., 0.], [3., 0.]]).unwrap());
    assert_relative_eq!(
        kk_stress(&odd, &d, KKParams::default()).unwrap(),
        0.5,
        max_relative = 1e-12
    );
}

#[test]
fn scale_sensitive_metrics_move_with_scale() {
    let (_, d) = p3();
    let odd = Layout::new(vec![[0., 0.], [1., 0.], [3., 0.]]).unwrap();
    let x = dist(&odd);
    let x2 = dist(&odd.scaled(2.0).unwrap());
    assert_ne!(raw_stress(&x, &d).unwrap(), raw_stress(&x2, &d).unwrap());
    assert_ne!(
        normalized_stress(&x, &d).unwrap(),
        normalized_stress(&x2, &d).unwrap()
    );
    // L0 follows the drawing: either the default or an explicit value doubled with it
    let k1 = kk_stress(&x, &d, KKParams::default()).unwrap();
    assert_relative_eq!(
        kk_stress(&x2, &d, KKParams::default()).unwrap(),
        4.0 * k1,
        max_relative = 1e-12
    );
    let k1 = kk_stress(&x, &d, KKParams::with_l0(3.0)).unwrap();
    let k2 = kk_stress(&x2, &d, KKParams::with_l0(6.0)).unwrap();
    assert_relative_eq!(k2, 4.0 * k1, max_relative = 1e-12);
    for alpha in [0.5, 2.0] {
        let xa = dist(&odd.scaled(alpha).unwrap());
        let ka = kk_stress(&xa, &d, KKParams::default()).unwrap();
        let k = kk_stress(&x, &d, KKParams::default()).unwrap();
        assert_relative_eq!(ka, alpha * alpha * k, max_relative = 1e-12);
    }
}

#[test]
fn bound_chain_and_ranges() {
    for inst in instances(100, 21) {
        let e = dist(&inst.layout);
        let d = &inst.d;
        let ns = normalized_stress(&e, d).unwrap();
        let (sns, _) = scale_normalized_stress(&e, d).unwrap();
        let scs = shepard_constant_stress(&e, d).unwrap();
        let slack = 1e-12 * (1.0 + ns.max(scs));
        assert!(sns >= -slack);
        assert!(
            sns <= ns + slack && sns <= scs + slack,
            "sns {sns} ns {ns} scs {scs}"
        );
        let sgs = shepard_goodness(&e, d).unwrap();
        assert!((-1.0..=1.0).contains(&sgs));
        let nms = nonmetric_stress(&e, d).unwrap();
        assert!((0.0..=1.0).contains(&nms));
        for m in [MetricId::Rs, MetricId::Kks, MetricId::Drs] {
            assert!(direct(m, &e, d) >= 0.0);
        }
    }
}

#[test]
fn quadratic_forms_match_direct_evaluation() {
    for inst in instances(100, 22) {
        let e = dist(&inst.layout);
        let d = &inst.d;
        let n = d.n() as f64;
        let rq = raw_stress_quadratic(&e, d).unwrap();
        let nq = ns_quadratic(&e, d).unwrap();
        assert!(rq.a > 0.0 && nq.a > 0.0);
        assert_relative_eq!(nq.evaluate(0.0), n * (n - 1.0) / 2.0, max_relative = 1e-12);
        let sum_d2: f64 = d.values().iter().map(|v| v * v).sum();
        assert_relative_eq!(rq.evaluate(0.0), sum_d2, max_relative = 1e-12);
        for alpha in [0.1, 0.2, 0.3, 1.0, 5.0, 7.0, 10.0] {
            let scaled = dist(&inst.layout.scaled(alpha).unwrap());
            let rs = raw_stress(&scaled, d).unwrap();
            let ns = normalized_stress(&scaled, d).unwrap();
            assert!(rel_close(rq.evaluate(alpha), rs, 1e-9), "rs {alpha}");
            assert!(rel_close(nq.evaluate(alpha), ns, 1e-9), "ns {alpha}");
        }
        assert_relative_eq!(
            ns_alpha_min(&e, d).unwrap(),
            -nq.b / (2.0 * nq.a),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            rs_alpha_min(&e, d).unwrap(),
            -rq.b / (2.0 * rq.a),
            max_relative = 1e-12
        );
    }
}

#[test]
fn alpha_min_beats_every_grid_point() {
    for inst in instances(30, 23) {
        let e = dist(&inst.layout);
        let d = &inst.d;
        for (amin, f) in [
            (
                rs_alpha_min(&e, d).unwrap(),
                raw_stress as fn(&LayoutDistances, &DistanceMatrix) -> _,
            ),
            (ns_alpha_min(&e, d).unwrap(), normalized_stress),
        ] {
            let at_min = f(&e.scaled(amin).unwrap(), d).unwrap();
            let grid = 1000;
            let step = 2.0 * amin / grid as f64;
            let mut best = (f64::INFINITY, 0.0);
            for k in 1..=grid {
                let alpha = step * k as f64;
                let v = f(&e.scaled(alpha).unwrap(), d).unwrap();
                assert!(at_min <= v * (1.0 + 1e-12) + 1e-12, "alpha {alpha}");
                if v < best.0 {
                    best = (v, alpha);
                }
            }
            assert!((best.1 - amin).abs() <= step);
        }
    }
}

#[test]
fn intersections() {
    let d2 = Graph::new(2, [(0, 1)]).unwrap().apsp().unwrap();
    let a = dist(&line_layout(2, 1.0));
    let b = dist(&line_layout(2, 3.0));
    assert_eq!(rs_alpha_intersection(&a, &b, &d2).unwrap(), Some(0.5));
    assert_eq!(ns_alpha_intersection(&a, &b, &d2).unwrap(), Some(0.5));
    assert_eq!(rs_alpha_intersection(&a, &a, &d2).unwrap(), None);
    assert_eq!(ns_alpha_intersection(&a, &a, &d2).unwrap(), None);

    let mut found = 0;
    for (k, inst) in instances(200, 24).into_iter().enumerate() {
        let e1 = dist(&inst.layout);
        let other = random_points(inst.d.n(), [0.3, 3.0][k % 2], &mut rng(k as u64));
        let e2 = dist(&other);
        if let Some(alpha) = ns_alpha_intersection(&e1, &e2, &inst.d).unwrap() {
            let v1 = normalized_stress(&e1.scaled(alpha).unwrap(), &inst.d).unwrap();
            let v2 = normalized_stress(&e2.scaled(alpha).unwrap(), &inst.d).unwrap();
            assert!((v1 - v2).abs() <= 1e-9 * (1.0 + v1));
            found += 1;
        }
        if let Some(alpha) = rs_alpha_intersection(&e1, &e2, &inst.d).unwrap() {
            let v1 = raw_stress(&e1.scaled(alpha).unwrap(), &inst.d).unwrap();
            let v2 = raw_stress(&e2.scaled(alpha).unwrap(), &inst.d).unwrap();
            assert!((v1 - v2).abs() <= 1e-9 * (1.0 + v1));
        }
    }
    assert!(found >= 50, "only {found} positive crossings");
}

#[test]
fn curves() {
    let inst = &instances(1, 25)[0];
    let alphas: Vec<f64> = (1..=200).map(|k| 0.05 * k as f64).collect();
    let opts = MetricOptions::default();
    let sns = stress_curve(&inst.layout, &inst.d, MetricId::Sns, &alphas, &opts).unwrap();
    assert!(sns.iter().all(|p| rel_close(p.value, sns[0].value, 1e-9)));
    let ns = stress_curve(&inst.layout, &inst.d, MetricId::Ns, &alphas, &opts).unwrap();
    for w in ns.windows(3) {
        let second = w[0].value - 2.0 * w[1].value + w[2].value;
        assert!(second >= -1e-9 * w[1].value, "{second}");
    }
    for p in &ns {
        assert!(rel_close(p.quadratic.unwrap(), p.value, 1e-9));
    }
    let e = dist(&inst.layout);
    let amin = ns_alpha_min(&e, &inst.d).unwrap();
    let fine: Vec<f64> = (1..=10_000)
        .map(|k| 4.0 * amin * k as f64 / 10_000.0)
        .collect();
    let pts = stress_curve(&inst.layout, &inst.d, MetricId::Ns, &fine, &opts).unwrap();
    let best = pts
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .unwrap();
    assert!((best.alpha - amin).abs() <= 4.0 * amin / 10_000.0);
    assert!(stress_curve(&inst.layout, &inst.d, MetricId::Ns, &[0.0], &opts).is_err());
}

#[test]
fn scale_invariant_metrics_ignore_scale() {
    let mut r = rng(26);
    for k in 0..20u64 {
        let n = 10 + k as usize;
        let g = random_connected_graph(n, 0.1, &mut r);
        let d = g.apsp().unwrap();
        for named in standard_layouts(&g, &d, k, 50).unwrap() {
            let e = dist(&named.layout);
            for alpha in [1e-2, 0.5, 2.0, 1e3] {
                let ea = dist(&named.layout.scaled(alpha).unwrap());
                for m in [MetricId::Sns, MetricId::Scs, MetricId::Nms, MetricId::Drs] {
                    let (a, b) = (direct(m, &e, &d), direct(m, &ea, &d));
                    assert!(
                        (a - b).abs() <= 1e-9 * (1.0 + a.abs()),
                        "{m} {} {alpha}",
                        named.source
                    );
                }
                assert_eq!(
                    direct(MetricId::Sgs, &e, &d),
                    direct(MetricId::Sgs, &ea, &d)
                );
            }
        }
    }
}

#[test]
fn degenerate_and_mismatched_inputs() {
    let (_, d) = p3();
    let flat = dist(&Layout::new(vec![[1., 1.]; 3]).unwrap());
    assert_eq!(raw_stress(&flat, &d).unwrap(), 6.0);
    assert_eq!(normalized_stress(&flat, &d).unwrap(), 3.0);
    assert!(rs_alpha_min(&flat, &d).is_err());
    assert!(scale_normalized_stress(&flat, &d).is_err());
    assert!(shepard_constant_stress(&flat, &d).is_err());
    assert!(distance_ratio_stress(&flat, &d, false).is_err());
    assert!(nonmetric_stress(&flat, &d).is_err());
    let small = dist(&line_layout(2, 1.0));
    for m in MetricId::ALL {
        assert!(
            evaluate(m, &small, &d, &MetricOptions::default()).is_err(),
            "{m}"
        );
    }
}
