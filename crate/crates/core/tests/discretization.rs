use std::f64::consts::PI;

use envdisc::discretize::{influence_count_estimate, linear_mode_count};
use envdisc::*;
use proptest::prelude::*;

fn flat(gamma: f64) -> SpectralDensity {
    SpectralDensity::flat(gamma).unwrap()
}

fn weight_within_panel_bound(bath: &DiscreteBath, gamma: f64, omega_c: f64) -> bool {
    let band = gamma * omega_c / PI;
    (bath.weight() - band).abs() <= gamma * bath.max_spacing() / PI
}

#[test]
fn influence_count_scales_as_inverse_sqrt_curvature() {
    let j = flat(1.0);
    for d in [1e-4, 4e-5, 1e-5] {
        let n1 = discretize(&DiscretizationScheme::influence(10.0, d).unwrap(), &j).unwrap().len() as f64;
        let n2 = discretize(&DiscretizationScheme::influence(10.0, d / 2.0).unwrap(), &j).unwrap().len() as f64;
        let ratio = n2 / n1;
        assert!((ratio / 2f64.sqrt() - 1.0).abs() < 0.05, "d = {d}: ratio {ratio}");
    }
}

#[test]
fn influence_count_tracks_the_count_integral() {
    let j = flat(1.0);
    for (t, d) in [(10.0, 1e-3), (10.0, 1e-4), (5.0, 1e-3), (20.0, 3e-4)] {
        let s = DiscretizationScheme::influence(t, d).unwrap();
        let n = discretize(&s, &j).unwrap().len() as f64;
        let estimate = influence_count_estimate(PI / t, d, 1.0 / d);
        assert!((n / estimate - 1.0).abs() < 0.1, "T = {t}, d = {d}: {n} vs {estimate}");
    }
}

#[test]
fn trajectories_stay_in_unit_interval_for_every_scheme() {
    let j = flat(1.0);
    let schemes = [
        DiscretizationScheme::linear(10.0, 20.0).unwrap(),
        DiscretizationScheme::influence(10.0, 3e-3).unwrap(),
        DiscretizationScheme::linear_ramp(10.0, 0.3).unwrap(),
        DiscretizationScheme::generalized(10.0, 3e-3).unwrap(),
    ];
    let grid = TimeGrid::new(10.0, 2001).unwrap();
    for s in schemes {
        let bath = discretize(&s, &j).unwrap();
        let traj = propagate(&bath, &grid).unwrap();
        assert!(traj.values().iter().all(|n| (0.0..=1.0).contains(n)), "{:?}", s.kind());
    }
}

#[test]
fn generalized_matches_influence_for_flat_density() {
    // dω²/J with J = γ/2π is the influence spacing with curvature 2πd/γ.
    let gamma = 2.0;
    let j = flat(gamma);
    let d = 1e-3;
    let g = discretize(&DiscretizationScheme::generalized(10.0, d).unwrap().with_cutoff_factor(4.0 * PI).unwrap(), &j)
        .unwrap();
    let i = discretize(&DiscretizationScheme::influence(10.0, 2.0 * PI * d / gamma).unwrap(), &j).unwrap();
    assert_eq!(g.len(), i.len());
    for (a, b) in g.modes().iter().zip(i.modes()) {
        assert!((a.omega - b.omega).abs() < 1e-9 * (1.0 + a.omega.abs()));
    }
}

#[test]
fn serialized_bath_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bath.csv");
    let bath = discretize(&DiscretizationScheme::influence(10.0, 1e-3).unwrap(), &flat(1.0)).unwrap();
    io::save_bath(&path, &bath).unwrap();
    assert_eq!(io::load_bath(&path).unwrap(), bath);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_count_and_weight(omega_c in 1.0f64..200.0, t in 1.0f64..40.0, gamma in 0.1f64..5.0) {
        let s = DiscretizationScheme::linear(t, omega_c).unwrap();
        if let Ok(bath) = discretize(&s, &flat(gamma)) {
            prop_assert_eq!(bath.len(), linear_mode_count(omega_c, t));
            prop_assert!(weight_within_panel_bound(&bath, gamma, omega_c));
        }
    }

    #[test]
    fn influence_weight_and_symmetry(d in 1e-4f64..0.05, t in 2.0f64..30.0, gamma in 0.1f64..5.0) {
        let s = DiscretizationScheme::influence(t, d).unwrap();
        if let Ok(bath) = discretize(&s, &flat(gamma)) {
            prop_assert!(weight_within_panel_bound(&bath, gamma, s.cutoff()));
            let m = bath.modes();
            for i in 0..m.len() {
                prop_assert_eq!(m[i].omega, -m[m.len() - 1 - i].omega);
                prop_assert_eq!(m[i].coupling, m[m.len() - 1 - i].coupling);
            }
            let pos: Vec<f64> = bath.frequencies().filter(|w| *w >= 0.0).collect();
            for w in pos.windows(2) {
                let mid = s.spacing_at(&flat(gamma), 0.5 * (w[0] + w[1])).unwrap();
                let ratio = (w[1] - w[0]) / mid;
                prop_assert!((0.9..=1.1).contains(&ratio), "ratio {}", ratio);
            }
        }
    }

    #[test]
    fn ramp_and_generalized_weights(p in 0.05f64..1.0, t in 2.0f64..30.0) {
        let j = flat(1.0);
        let ramp = DiscretizationScheme::linear_ramp(t, p).unwrap();
        if let Ok(bath) = discretize(&ramp, &j) {
            prop_assert!(weight_within_panel_bound(&bath, 1.0, ramp.cutoff()));
        }
        let gen = DiscretizationScheme::generalized(t, p / 20.0).unwrap();
        if let Ok(bath) = discretize(&gen, &j) {
            prop_assert!(weight_within_panel_bound(&bath, 1.0, gen.cutoff()));
        }
    }
}
