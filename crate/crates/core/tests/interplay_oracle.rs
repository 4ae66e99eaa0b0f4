//! The constrained minimum over Bell-diagonal weights has closed forms:
//! a two-vertex mixture for the concurrence and a Gibbs distribution for the
//! conditional entropy. Both are compared with the penalty solver.

use std::f64::consts::FRAC_PI_4;

use bellcert_core::interplay::{
    feasible_theta_range, min_entanglement_at_theta, min_entanglement_at_theta_with,
    operator_eigenvalues, witness_residuals, InterplayOptions, StateFamily,
};
use bellcert_core::measures::{eof_from_concurrence, shannon_entropy};
use bellcert_core::MeasureKind;

fn exact_concurrence(s: f64, alpha: f64, theta: f64) -> f64 {
    let e = operator_eigenvalues(alpha, theta);
    let w0 = (s - e[1]) / (e[0] - e[1]);
    (2.0 * w0 - 1.0).max(0.0)
}

fn gibbs(e: &[f64; 4], beta: f64) -> [f64; 4] {
    let top = e[0];
    let w = e.map(|x| (beta * (x - top)).exp());
    let z: f64 = w.iter().sum();
    w.map(|x| x / z)
}

fn exact_distillable(s: f64, alpha: f64, theta: f64) -> f64 {
    let e = operator_eigenvalues(alpha, theta);
    let mean = |b: f64| gibbs(&e, b).iter().zip(&e).map(|(w, x)| w * x).sum::<f64>();
    let (mut lo, mut hi) = (0.0, 1.0);
    while mean(hi) < s {
        hi *= 2.0;
        if hi > 1e6 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean(mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    1.0 - shannon_entropy(&gibbs(&e, 0.5 * (lo + hi)))
}

#[test]
fn concurrence_matches_two_vertex_mixture() {
    for &(s, alpha) in &[
        (2.5, 1.0),
        (2.7, 1.0),
        (3.1, 1.3),
        (5.1, 1.0 + std::f64::consts::SQRT_2),
    ] {
        let (lo, hi) = feasible_theta_range(s, alpha).unwrap();
        for k in 0..5 {
            let theta = lo + (hi - lo) * k as f64 / 4.0;
            let p =
                min_entanglement_at_theta(s, alpha, theta, MeasureKind::Concurrence, 16).unwrap();
            let exact = exact_concurrence(s, alpha, theta);
            assert!(
                (p.e_min - exact).abs() < 1e-6,
                "S={s} α={alpha} θ={theta}: {} vs {exact}",
                p.e_min
            );
            let (ds, de) = witness_residuals(&p, alpha).unwrap();
            assert!(ds < 1e-6 && de < 1e-6);
        }
    }
}

#[test]
fn eof_follows_concurrence() {
    let (s, alpha, theta) = (2.6, 1.0, 0.6);
    let p = min_entanglement_at_theta(s, alpha, theta, MeasureKind::EntanglementOfFormation, 16)
        .unwrap();
    let exact = eof_from_concurrence(exact_concurrence(s, alpha, theta));
    assert!((p.e_min - exact).abs() < 1e-6);
}

#[test]
fn distillable_matches_gibbs_weights() {
    for &(s, alpha) in &[(2.3, 1.0), (2.75, 1.0), (3.3, 1.5)] {
        let (lo, hi) = feasible_theta_range(s, alpha).unwrap();
        for k in 0..4 {
            let theta = lo + (hi - lo) * k as f64 / 3.0;
            let p = min_entanglement_at_theta(s, alpha, theta, MeasureKind::OneWayDistillable, 16)
                .unwrap();
            let exact = exact_distillable(s, alpha, theta);
            assert!(
                (p.e_min - exact).abs() < 1e-6,
                "S={s} α={alpha} θ={theta}: {} vs {exact}",
                p.e_min
            );
        }
    }
}

#[test]
fn general_family_does_not_beat_bell_diagonal() {
    let (s, alpha, theta) = (2.6, 1.0, FRAC_PI_4 - 0.1);
    let opts = InterplayOptions {
        restarts: 3,
        seed: 5,
        family: StateFamily::General,
    };
    let general =
        min_entanglement_at_theta_with(s, alpha, theta, MeasureKind::Concurrence, &opts).unwrap();
    let exact = exact_concurrence(s, alpha, theta);
    assert!(general.e_min >= exact - 1e-6);
    assert!(
        general.e_min <= exact + 5e-2,
        "{} vs {exact}",
        general.e_min
    );
    let (ds, _) = witness_residuals(&general, alpha).unwrap();
    assert!(ds < 1e-6);
}

#[test]
fn same_seed_same_answer() {
    let a = min_entanglement_at_theta(2.6, 1.0, 0.5, MeasureKind::Concurrence, 8).unwrap();
    let b = min_entanglement_at_theta(2.6, 1.0, 0.5, MeasureKind::Concurrence, 8).unwrap();
    assert_eq!(a, b);
}
