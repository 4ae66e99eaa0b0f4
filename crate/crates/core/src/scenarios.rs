//! Simulated Bell tests on pure and Werner states, scans over the tilt α,
//! and the analytic conditions under which some α > 1 improves the
//! concurrence estimate.
//!
//! Measurements follow `Â₀ = σz`, `Â₁ = A(θ₁)`, `B̂₀ = B(θ₂)`, `B̂₁ = B(θ₃)`,
//! with `A(θ) = cos θ σz + sin θ σx`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bell::{bell_value, quantum_bound, BellScenario, MeasurementQuad};
use crate::estimation::{bound, AssumptionLevel, SUPER_QUANTUM_TOL};
use crate::linalg::{bell_basis, bell_diagonal_state, BellSpectrum, DensityMatrix, C64};
use crate::measures::MeasureKind;
use crate::optimize::golden_section;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScenarioState {
    /// `cos δ |00⟩ + sin δ |11⟩`, `δ ∈ [0, π/2]`.
    Pure { delta: f64 },
    /// `(1 − p)|Φ⁺⟩⟨Φ⁺| + p I/4`, `p ∈ [0, 1]`.
    Werner { p: f64 },
}

impl ScenarioState {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScenarioState::Pure { delta } if !(0.0..=FRAC_PI_2).contains(&delta) => {
                Err(Error::ParamOutOfRange("delta outside [0, pi/2]"))
            }
            ScenarioState::Werner { p } if !(0.0..=1.0).contains(&p) => {
                Err(Error::ParamOutOfRange("Werner parameter outside [0, 1]"))
            }
            _ => Ok(()),
        }
    }
}

/// `(θ₁, θ₂, θ₃)`.
pub type Thetas = [f64; 3];

pub fn scenario_quad(thetas: &Thetas) -> MeasurementQuad {
    MeasurementQuad::new(0.0, thetas[0], thetas[1], thetas[2])
}

pub fn scenario_state(spec: &ScenarioState) -> Result<DensityMatrix> {
    spec.validate()?;
    match *spec {
        ScenarioState::Pure { delta } => {
            let (s, c) = delta.sin_cos();
            let z = C64::new(0.0, 0.0);
            DensityMatrix::from_pure(&[C64::new(c, 0.0), z, z, C64::new(s, 0.0)])
        }
        ScenarioState::Werner { p } => {
            let phi = DensityMatrix::from_pure(&bell_basis()[0])?;
            let _ = BellSpectrum::werner(p)?;
            phi.mix(&DensityMatrix::maximally_mixed(), p)
        }
    }
}

pub fn scenario_bell_value(spec: &ScenarioState, thetas: &Thetas, alpha: f64) -> Result<f64> {
    let scenario = BellScenario::new(alpha, scenario_quad(thetas))?;
    Ok(bell_value(&scenario_state(spec)?, &scenario))
}

/// The α range scanned by default: 1 to 3 in steps of 0.005.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=400).map(|k| 1.0 + 0.005 * k as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub alpha_grid: Vec<f64>,
    pub s_values: Vec<f64>,
    /// One column of bounds per requested measure.
    pub bounds: Vec<(MeasureKind, Vec<f64>)>,
    /// Grid α maximizing each column; ties go to the smaller α.
    pub best_alpha: Vec<(MeasureKind, f64)>,
}

impl ScanResult {
    pub fn best_alpha_for(&self, kind: MeasureKind) -> Option<f64> {
        self.best_alpha
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, a)| *a)
    }

    pub fn bounds_for(&self, kind: MeasureKind) -> Option<&[f64]> {
        self.bounds
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, v)| v.as_slice())
    }
}

/// Simulates the Bell value at every grid α and converts it into bounds.
/// Values at or below the local bound certify nothing and are reported as 0.
pub fn alpha_scan(
    spec: &ScenarioState,
    thetas: &Thetas,
    alpha_grid: &[f64],
    measures: &[MeasureKind],
    level: AssumptionLevel,
) -> Result<ScanResult> {
    if alpha_grid.is_empty() {
        return Err(Error::ParamOutOfRange("empty alpha grid"));
    }
    let rho = scenario_state(spec)?;
    let quad = scenario_quad(thetas);
    let mut s_values = Vec::with_capacity(alpha_grid.len());
    let mut columns: Vec<Vec<f64>> = measures
        .iter()
        .map(|_| Vec::with_capacity(alpha_grid.len()))
        .collect();
    for &alpha in alpha_grid {
        let s = bell_value(&rho, &BellScenario::new(alpha, quad)?);
        let qb = quantum_bound(alpha);
        if s > qb + SUPER_QUANTUM_TOL {
            return Err(Error::SuperQuantum {
                value: s,
                bound: qb,
            });
        }
        s_values.push(s);
        for (col, &kind) in columns.iter_mut().zip(measures) {
            let value = if s > 2.0 * alpha {
                bound(kind, s, alpha, level)?.value
            } else {
                0.0
            };
            col.push(value);
        }
    }
    let best_alpha = measures
        .iter()
        .zip(&columns)
        .map(|(&kind, col)| {
            let mut k_best = 0;
            for (k, &v) in col.iter().enumerate() {
                if v > col[k_best] {
                    k_best = k;
                }
            }
            (kind, alpha_grid[k_best])
        })
        .collect();
    Ok(ScanResult {
        alpha_grid: alpha_grid.to_vec(),
        s_values,
        bounds: measures.iter().cloned().zip(columns).collect(),
        best_alpha,
    })
}

/// Evaluates the sufficient condition for some α > 1 to beat α = 1
/// on the concurrence estimate. Equality counts as failure.
pub fn improvement_condition(
    spec: &ScenarioState,
    thetas: &Thetas,
    level: AssumptionLevel,
) -> Result<bool> {
    spec.validate()?;
    if thetas.iter().any(|t| !t.is_finite()) {
        return Err(Error::ParamOutOfRange("measurement angle is not finite"));
    }
    let [t1, t2, t3] = *thetas;
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let (s3, c3) = t3.sin_cos();
    let r = SQRT_2 + 1.0;
    let (visibility, coherence) = match *spec {
        ScenarioState::Pure { delta } => (1.0, (2.0 * delta).sin()),
        ScenarioState::Werner { p } => (1.0 - p, 1.0),
    };
    Ok(match level {
        AssumptionLevel::DeviceIndependent => {
            let lhs = coherence * s1 * (s2 - s3) + c2 * (r + c1) + c3 * (r - c1);
            visibility * lhs > 2.0 * r
        }
        AssumptionLevel::QubitPair => {
            let inner = coherence * s1 * (s2 - s3) + (1.0 + c1) * c2 + (1.0 - c1) * c3;
            visibility * visibility * (c2 + c3) * inner > 4.0
        }
    })
}

/// Optimal tilt `α*` and the concurrence estimate it yields for the family
/// `θ₁ = π/2`, `θ₃ = −θ₂`.
///
/// Fails with [`Error::ConditionNotMet`] when [`improvement_condition`] does
/// not hold, since the formulas then give `α* ≤ 1`.
pub fn optimal_alpha(
    spec: &ScenarioState,
    theta2: f64,
    level: AssumptionLevel,
) -> Result<(f64, f64)> {
    spec.validate()?;
    if !(theta2 > 0.0 && theta2 < FRAC_PI_2) {
        return Err(Error::ParamOutOfRange("theta2 outside (0, pi/2)"));
    }
    if !improvement_condition(spec, &[FRAC_PI_2, theta2, -theta2], level)? {
        return Err(Error::ConditionNotMet);
    }
    let (s2, c2) = theta2.sin_cos();
    Ok(match (*spec, level) {
        (ScenarioState::Pure { delta }, AssumptionLevel::DeviceIndependent) => {
            let t = (2.0 * delta).sin() * s2 / (1.0 - c2);
            (0.5 * (t - 1.0 / t), 0.5 * (1.0 - c2) * (t * t + 1.0))
        }
        (ScenarioState::Werner { p }, AssumptionLevel::DeviceIndependent) => {
            let q = 1.0 - p;
            let t = q * s2 / (1.0 - q * c2);
            (
                0.5 * (t - 1.0 / t),
                1.0 - p * (2.0 - p) / (2.0 * (1.0 - q * c2)),
            )
        }
        (ScenarioState::Pure { delta }, AssumptionLevel::QubitPair) => {
            let d = (2.0 * delta).sin();
            (d / theta2.tan(), d)
        }
        (ScenarioState::Werner { p }, AssumptionLevel::QubitPair) => {
            let q2 = (1.0 - p) * (1.0 - p);
            let denom = 1.0 - q2 * c2 * c2;
            (q2 * c2 * s2 / denom, (1.0 - p) * s2 / denom.sqrt())
        }
    })
}

/// `1 − 1/((√2−1) sin θ₂ + cos θ₂)`: largest Werner `p` for which some α > 1
/// improves the device-independent estimate.
pub fn di_werner_threshold(theta2: f64) -> f64 {
    1.0 - 1.0 / ((SQRT_2 - 1.0) * theta2.sin() + theta2.cos())
}

/// `1 − 1/√(√2 cos θ₂ cos(θ₂ − π/4))`: the qubit-pair analogue.
pub fn semi_di_werner_threshold(theta2: f64) -> f64 {
    1.0 - 1.0 / (SQRT_2 * theta2.cos() * (theta2 - FRAC_PI_4).cos()).sqrt()
}

/// Supremum of a threshold function over `θ₂ ∈ (0, π/4)` and its location.
pub fn threshold_supremum(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let (theta, neg) = golden_section(|t| -f(t), 0.0, FRAC_PI_4, 1e-10);
    (theta, -neg)
}

/// Scan argmax against the closed-form `α*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaCheck {
    pub alpha_star: f64,
    pub c_est: f64,
    pub scan_best_alpha: f64,
    pub bound_at_alpha_star: f64,
    /// Scan and formula agree to one grid step in α and `1e-6` in value.
    pub agrees: bool,
}

pub fn check_optimal_alpha(
    spec: &ScenarioState,
    theta2: f64,
    level: AssumptionLevel,
    alpha_grid: &[f64],
) -> Result<FormulaCheck> {
    let (alpha_star, c_est) = optimal_alpha(spec, theta2, level)?;
    let thetas = [FRAC_PI_2, theta2, -theta2];
    let scan = alpha_scan(
        spec,
        &thetas,
        alpha_grid,
        &[MeasureKind::Concurrence],
        level,
    )?;
    let scan_best_alpha = scan.best_alpha[0].1;
    let s = scenario_bell_value(spec, &thetas, alpha_star)?;
    let bound_at_alpha_star = if s > 2.0 * alpha_star {
        bound(MeasureKind::Concurrence, s, alpha_star, level)?.value
    } else {
        0.0
    };
    let step = alpha_grid
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    let agrees = (scan_best_alpha - alpha_star).abs() <= step + 1e-12
        && (bound_at_alpha_star - c_est).abs() <= 1e-6;
    Ok(FormulaCheck {
        alpha_star,
        c_est,
        scan_best_alpha,
        bound_at_alpha_star,
        agrees,
    })
}

/// Bell-diagonal spectrum of a Werner state, for callers that need it.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    BellSpectrum::werner(p).map(|s| bell_diagonal_state(&s))
}
