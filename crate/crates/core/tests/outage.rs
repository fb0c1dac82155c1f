use junction_core::outage::{gamma_ccdf_integer, interference_spec, outage_d1_with, outage_d2_with};
use junction_core::{
    inner_term, outage_d1, outage_d2, outage_oma, outage_pair, placement_from_cartesian, thresholds, Antenna,
    Destination, InterferenceComposition, LinkState, Noma, OutageOptions, RoadAxis, Scenario, Scheme, Traffic,
};
use proptest::prelude::*;
use statrs::function::gamma::gamma_ur;

fn at_lambda(lambda: f64) -> Scenario {
    Scenario {
        traffic: Traffic::uniform(lambda, 1.0),
        ..Scenario::default()
    }
}

fn all_outputs(sc: &Scenario) -> [f64; 4] {
    let (n1, n2) = outage_pair(sc, Scheme::Noma, &OutageOptions::default()).unwrap();
    let (o1, o2) = outage_pair(sc, Scheme::Oma, &OutageOptions::default()).unwrap();
    [n1, n2, o1, o2]
}

#[test]
fn gamma_ccdf_identity() {
    for m in 1..=5u32 {
        for mu in [0.5, 1.0, 3.0] {
            for x in [0.1, 1.0, 10.0] {
                let arg = m as f64 / mu * x;
                let ours = gamma_ccdf_integer(m, arg);
                let reference = gamma_ur(m as f64, arg);
                assert!(
                    (ours - reference).abs() <= 1e-12,
                    "m={m} mu={mu} x={x}: {ours} vs {reference}"
                );
            }
        }
    }
}

#[test]
fn empty_roads_never_fail() {
    let sc = at_lambda(0.0);
    assert_eq!(outage_d1(&sc).unwrap().total, 0.0);
    assert_eq!(outage_d2(&sc).unwrap().total, 0.0);
    assert_eq!(outage_oma(&sc).unwrap(), (0.0, 0.0));
}

#[test]
fn infeasible_split_always_fails() {
    let mut sc = at_lambda(0.01);
    sc.noma = Noma::with_a1(0.7, 1.0, 0.5);
    let th = thresholds(&sc.noma);
    assert!(th.theta1 >= sc.noma.a1 / sc.noma.a2);
    assert_eq!(outage_d1(&sc).unwrap().total, 1.0);
    assert_eq!(outage_d2(&sc).unwrap().total, 1.0);
    sc.traffic = Traffic::uniform(0.0, 1.0);
    assert_eq!(outage_d1(&sc).unwrap().total, 1.0);
}

#[test]
fn link_budget_cancels() {
    for lambda in [1e-3, 1e-2] {
        let base = at_lambda(lambda);
        let reference = all_outputs(&base);
        for factor in [0.1, 10.0] {
            let mut sc = base;
            sc.antenna = Antenna {
                g_max: base.antenna.g_max * factor,
                g_min: base.antenna.g_min * factor.min(1.0),
                ..base.antenna
            };
            let scaled = all_outputs(&sc);
            for (a, b) in scaled.iter().zip(reference) {
                assert!((a - b).abs() <= 1e-10, "factor {factor}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn identical_lanes_match_scaled_intensity() {
    // a vanishing lane width stacks every lane on the centre line
    for k in 2..=4u32 {
        let mut lanes = at_lambda(2e-3);
        lanes.layout.lanes_x = k;
        lanes.layout.lanes_y = k;
        lanes.layout.lane_width = f64::MIN_POSITIVE;
        let single = at_lambda(2e-3 * k as f64);
        let a = all_outputs(&lanes);
        let b = all_outputs(&single);
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-12, "k={k}: {x} vs {y}");
        }
    }
}

#[test]
fn d2_depends_only_on_larger_ratio() {
    // Ψ2 = 10 dominates Ψ1 = 1.25 and stays dominant after lowering r1
    let mut sc = at_lambda(1e-3);
    let base = outage_d2(&sc).unwrap().total;
    sc.noma.r1 = 0.3;
    let th = thresholds(&sc.noma);
    assert!(th.psi1.unwrap() < th.psi2);
    assert_eq!(outage_d2(&sc).unwrap().total, base);
    assert_ne!(
        outage_d1(&sc).unwrap().total,
        outage_d1(&at_lambda(1e-3)).unwrap().total
    );
}

#[test]
fn breakdown_is_consistent() {
    let sc = at_lambda(1e-3);
    for b in [outage_d1(&sc).unwrap(), outage_d2(&sc).unwrap()] {
        let success: f64 = b.contributions.iter().sum();
        assert!((b.total - (1.0 - success)).abs() <= 1e-15);
    }
    let b = outage_d1(&sc).unwrap();
    for state in LinkState::ALL {
        let w = sc.link_state_probability(Destination::D1, state);
        assert!(b.contribution(state) >= 0.0 && b.contribution(state) <= w);
    }
}

#[test]
fn unit_shape_factorises() {
    let mut sc = at_lambda(3e-3);
    sc.propagation.m_los = 1;
    let specs = |axis| {
        LinkState::ALL
            .iter()
            .map(|&k| interference_spec(&sc, Destination::D1, axis, k))
            .collect::<Vec<_>>()
    };
    let x = specs(RoadAxis::X);
    let y = specs(RoadAxis::Y);
    let omega = 2.0e3;
    let joint = inner_term(&x, &y, 1, omega).unwrap();
    let product: f64 = x
        .iter()
        .chain(&y)
        .map(|s| inner_term(std::slice::from_ref(s), &[], 1, omega).unwrap())
        .product();
    assert!((joint - product).abs() <= 1e-14);
}

#[test]
fn composition_modes_are_close_at_defaults() {
    let sc = at_lambda(1e-3);
    let per_class = OutageOptions {
        composition: InterferenceComposition::PerClass,
        ..OutageOptions::default()
    };
    let a = outage_d1_with(&sc, &OutageOptions::default()).unwrap().total;
    let b = outage_d1_with(&sc, &per_class).unwrap().total;
    assert!((a - b).abs() < 1e-2);
    let a = outage_d2_with(&sc, &OutageOptions::default()).unwrap().total;
    let b = outage_d2_with(&sc, &per_class).unwrap().total;
    assert!((a - b).abs() < 1e-2);
}

#[test]
fn far_links_stay_finite() {
    let mut sc = at_lambda(1e-3);
    sc.source = placement_from_cartesian(-5e3, 0.0);
    for v in all_outputs(&sc) {
        assert!((0.0..=1.0).contains(&v));
    }
}

fn non_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] >= w[0] - 1e-12)
}

#[test]
fn monotone_in_intensity_and_access() {
    let grid = [0.0, 1e-4, 5e-4, 1e-3, 3e-3, 1e-2, 5e-2];
    for axis in RoadAxis::ALL {
        for class in LinkState::ALL {
            let mut curves = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
            for &lam in &grid {
                let mut sc = at_lambda(1e-3);
                sc.traffic.set_intensity(axis, class, lam);
                for (curve, v) in curves.iter_mut().zip(all_outputs(&sc)) {
                    curve.push(v);
                }
            }
            for c in &curves {
                assert!(non_decreasing(c), "{axis:?} {class:?}: {c:?}");
            }
        }
    }
    let mut curves = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for p in [0.0, 0.1, 0.3, 0.6, 1.0] {
        let mut sc = at_lambda(3e-3);
        sc.traffic.p = p;
        for (curve, v) in curves.iter_mut().zip(all_outputs(&sc)) {
            curve.push(v);
        }
    }
    for c in &curves {
        assert!(non_decreasing(c), "p sweep: {c:?}");
    }
}

#[test]
fn monotone_in_rates() {
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for r in [0.0, 0.1, 0.25, 0.4, 0.5, 0.6, 0.7] {
        let mut sc = at_lambda(1e-3);
        sc.noma.r1 = r;
        sc.noma.r2 = r;
        d1.push(outage_d1(&sc).unwrap().total);
        d2.push(outage_d2(&sc).unwrap().total);
    }
    assert!(non_decreasing(&d1), "{d1:?}");
    assert!(non_decreasing(&d2), "{d2:?}");
    assert_eq!(d1[0], 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn outputs_are_probabilities(
        lam in 0.0f64..0.05,
        x1 in -200.0f64..200.0,
        y1 in -60.0f64..60.0,
        a1 in 0.55f64..0.99,
        r in 0.0f64..1.0,
    ) {
        let mut sc = at_lambda(lam);
        sc.d1 = placement_from_cartesian(x1, y1);
        prop_assume!(sc.link_distance(Destination::D1) > 1.0);
        sc.noma = Noma::with_a1(a1, r, r);
        for v in all_outputs(&sc) {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn denser_traffic_never_helps(lam in 1e-5f64..0.02, bump in 1.0f64..3.0) {
        let lo = all_outputs(&at_lambda(lam));
        let hi = all_outputs(&at_lambda(lam * bump));
        for (a, b) in lo.iter().zip(hi) {
            prop_assert!(b >= a - 1e-12);
        }
    }
}
