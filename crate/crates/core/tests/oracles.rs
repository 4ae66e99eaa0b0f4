use std::f64::consts::FRAC_PI_2;

use bellcert_core::bell::{max_violation_bruteforce, max_violation_general};
use bellcert_core::estimation::distillable_bound;
use bellcert_core::linalg::bell_diagonal_state;
use bellcert_core::sampling::{random_pure_state, random_state, rng_from_seed};
use bellcert_core::scenarios::{
    check_optimal_alpha, default_alpha_grid, scenario_state, ScenarioState,
};
use bellcert_core::{AssumptionLevel, BellSpectrum, Error};

mod common;
use common::distillable_grid_oracle;

#[test]
fn general_formula_matches_brute_force() {
    let mut rng = rng_from_seed(11);
    for trial in 0..200 {
        let rho = if trial % 2 == 0 {
            random_state(&mut rng)
        } else {
            random_pure_state(&mut rng)
        };
        for alpha in [1.0, 1.2, 1.5, 2.0] {
            let formula = max_violation_general(&rho, alpha, true).unwrap();
            let brute = max_violation_bruteforce(&rho, alpha, 48);
            assert!((formula - brute).abs() <= 1e-3, "{formula} vs {brute}");
        }
    }
}

#[test]
fn pure_and_werner_closed_forms() {
    for delta in [0.1, 0.6, 1.0, 1.4] {
        let rho = scenario_state(&ScenarioState::Pure { delta }).unwrap();
        for alpha in [1.0, 1.7] {
            let expected = 2.0 * (alpha * alpha + (2.0f64 * delta).sin().powi(2)).sqrt();
            assert!((max_violation_general(&rho, alpha, true).unwrap() - expected).abs() < 1e-10);
            assert!((max_violation_bruteforce(&rho, alpha, 48) - expected).abs() < 1e-6);
        }
    }
    for p in [0.0, 0.2, 0.5] {
        let rho = bell_diagonal_state(&BellSpectrum::werner(p).unwrap());
        for alpha in [1.0f64, 2.5] {
            let expected = 2.0 * (1.0 - p) * (1.0 + alpha * alpha).sqrt();
            assert!((max_violation_general(&rho, alpha, true).unwrap() - expected).abs() < 1e-10);
            assert!((max_violation_bruteforce(&rho, alpha, 48) - expected).abs() < 1e-6);
        }
    }
}

#[test]
fn distillable_matches_grid_oracle() {
    let solver = distillable_bound(2.5, 1.0).unwrap().value;
    assert!((solver - distillable_grid_oracle(2.5, 1.0)).abs() <= 1e-4);
}

#[test]
fn distillable_is_nondecreasing() {
    for alpha in [1.0, 1.8] {
        let hi = 2.0 * (1.0f64 + alpha * alpha).sqrt();
        let values: Vec<f64> = (1..=40)
            .map(|k| {
                let s = 2.0 * alpha + (hi - 2.0 * alpha) * k as f64 / 40.0;
                distillable_bound(s, alpha).unwrap().value
            })
            .collect();
        assert!(values.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        assert!((values[39] - 1.0).abs() <= 1e-6);
    }
    assert!(matches!(
        distillable_bound(2.0, 1.0),
        Err(Error::NoViolation { .. })
    ));
}

/// The formula for α* is a sufficient-condition optimum, so disagreement with
/// the scan is reported rather than treated as an error. The value at α*
/// itself must still match.
#[test]
fn scan_and_formula_for_optimal_alpha() {
    let grid = default_alpha_grid();
    let cases = [
        (
            ScenarioState::Pure { delta: 0.6 },
            FRAC_PI_2 - 1.2,
            AssumptionLevel::QubitPair,
        ),
        (
            ScenarioState::Pure { delta: 0.7 },
            0.3,
            AssumptionLevel::DeviceIndependent,
        ),
        (
            ScenarioState::Werner { p: 0.03 },
            0.3,
            AssumptionLevel::QubitPair,
        ),
        (
            ScenarioState::Werner { p: 0.02 },
            0.35,
            AssumptionLevel::DeviceIndependent,
        ),
    ];
    for (spec, theta2, level) in cases {
        match check_optimal_alpha(&spec, theta2, level, &grid) {
            Ok(c) => {
                assert!(
                    (c.bound_at_alpha_star - c.c_est).abs() <= 1e-6,
                    "{spec:?} {c:?}"
                );
                if !c.agrees {
                    println!(
                        "flag: {spec:?} θ₂={theta2}: α*={} scan={}",
                        c.alpha_star, c.scan_best_alpha
                    );
                }
            }
            Err(Error::ConditionNotMet) => println!("condition not met: {spec:?} θ₂={theta2}"),
            Err(e) => panic!("{e}"),
        }
    }
}
