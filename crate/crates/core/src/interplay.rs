//! Least entanglement compatible with a Bell value when Bob's measurement
//! incompatibility is fixed.
//!
//! Alice measures σz and σx; Bob measures `cos θ σz ± sin θ σx` with
//! `θ ∈ [0, π/4]`. The operator is then
//! `Ŝ_α(θ) = 2α cos θ σz⊗σz + 2 sin θ σx⊗σx`, diagonal in the Bell basis with
//! eigenvalues `(2αc + 2s, 2αc − 2s, −2αc + 2s, −2αc − 2s)` on
//! `(Φ⁺, Φ⁻, Ψ⁺, Ψ⁻)`.

use core::f64::consts::FRAC_PI_4;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bell::{
    alpha_chsh_operator, bell_value, check_alpha, quantum_bound, BellScenario, MeasurementQuad,
};
use crate::linalg::{
    bell_basis, bell_diagonal_from_weights, hermitian_eigenvalues, CMat4, DensityMatrix, C64,
};
use crate::measures::{measure_bell_diagonal, MeasureKind};
use crate::optimize::{augmented_lagrangian, golden_section, AugLagOptions, NelderMeadOptions};
use crate::sampling::rng_from_seed;
use crate::{Error, Result};

/// Residual a restart must reach before it is accepted.
pub const CONSTRAINT_TOL: f64 = 1e-7;
const EIGEN_CHECK_TOL: f64 = 1e-9;

/// Set of states searched by [`min_entanglement_at_theta_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    /// `ρ = Σ gᵢ² |bᵢ⟩⟨bᵢ| / Σ gᵢ²` over the Bell basis. Since `Ŝ_α(θ)` is
    /// Bell-diagonal and twirling onto the Bell basis cannot raise any of the
    /// measures, this family already contains a minimizer.
    BellDiagonal,
    /// `ρ = GG†/Tr(GG†)` with `G` an arbitrary complex 4×4 matrix.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterplayOptions {
    pub restarts: usize,
    pub seed: u64,
    pub family: StateFamily,
}

impl Default for InterplayOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0,
            family: StateFamily::BellDiagonal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterplayPoint {
    pub theta: f64,
    pub s: f64,
    pub measure: MeasureKind,
    pub e_min: f64,
    pub witness: DensityMatrix,
}

/// Eigenvalues of `Ŝ_α(θ)` on `(Φ⁺, Φ⁻, Ψ⁺, Ψ⁻)`.
pub fn operator_eigenvalues(alpha: f64, theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    let (a, b) = (2.0 * alpha * c, 2.0 * s);
    [a + b, a - b, -a + b, -a - b]
}

/// `2α cos θ + 2 sin θ`, the largest value reachable at `θ ∈ [0, π/4]`.
pub fn max_value_at_theta(alpha: f64, theta: f64) -> f64 {
    operator_eigenvalues(alpha, theta)[0]
}

/// Compares the analytic top eigenvalue of `Ŝ_α(θ)` with a numeric eigensolve.
pub fn check_eigenvalues(alpha: f64, thetas: &[f64]) -> Result<()> {
    for &theta in thetas {
        let scenario = BellScenario::new(alpha, MeasurementQuad::symmetric(theta))?;
        let numeric = hermitian_eigenvalues(&alpha_chsh_operator(&scenario))?[0];
        let gap = (numeric - max_value_at_theta(alpha, theta)).abs();
        if gap > EIGEN_CHECK_TOL {
            return Err(Error::EigenvalueMismatch(gap));
        }
    }
    Ok(())
}

fn check_violation(s: f64, alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    if !s.is_finite() {
        return Err(Error::ParamOutOfRange("Bell value is not finite"));
    }
    let bound = quantum_bound(alpha);
    if s > bound + crate::estimation::SUPER_QUANTUM_TOL {
        return Err(Error::SuperQuantum { value: s, bound });
    }
    if s <= 2.0 * alpha {
        return Err(Error::NoViolation {
            value: s,
            bound: 2.0 * alpha,
        });
    }
    Ok(())
}

/// `θ*_C = arctan(√(S²/4 − α²)/α)`, where the least concurrence is needed.
pub fn theta_star_concurrence(s: f64, alpha: f64) -> Result<f64> {
    check_violation(s, alpha)?;
    let c = (0.25 * s * s - alpha * alpha).max(0.0).sqrt();
    Ok((c / alpha).atan())
}

/// The interval of `θ ∈ [0, π/4]` on which `S` is reachable, i.e. where
/// `2α cos θ + 2 sin θ ≥ S`.
pub fn feasible_theta_range(s: f64, alpha: f64) -> Result<(f64, f64)> {
    check_violation(s, alpha)?;
    let r = quantum_bound(alpha);
    let phi = (1.0 / alpha).atan();
    let delta = (s / r).min(1.0).acos();
    Ok(((phi - delta).max(0.0), (phi + delta).min(FRAC_PI_4)))
}

/// [`min_entanglement_at_theta_with`] over Bell-diagonal states with the
/// given number of restarts and seed 0.
pub fn min_entanglement_at_theta(
    s: f64,
    alpha: f64,
    theta: f64,
    measure: MeasureKind,
    restarts: usize,
) -> Result<InterplayPoint> {
    let opts = InterplayOptions {
        restarts,
        ..InterplayOptions::default()
    };
    min_entanglement_at_theta_with(s, alpha, theta, measure, &opts)
}

/// Minimizes `measure(ρ)` subject to `Tr(ρ Ŝ_α(θ)) = S`.
///
/// Each restart runs an augmented-Lagrangian Nelder–Mead solve from a seeded
/// random factor. A restart counts once its residual is at most `1e-7`; the
/// survivor is then mixed with the extremal Bell state on the far side of
/// `S` so that the constraint holds to rounding. The best survivor wins,
/// ties going to the earlier restart.
pub fn min_entanglement_at_theta_with(
    s: f64,
    alpha: f64,
    theta: f64,
    measure: MeasureKind,
    opts: &InterplayOptions,
) -> Result<InterplayPoint> {
    check_alpha(alpha)?;
    if !(0.0..=FRAC_PI_4).contains(&theta) {
        return Err(Error::ParamOutOfRange("theta outside [0, pi/4]"));
    }
    if !s.is_finite() {
        return Err(Error::ParamOutOfRange("Bell value is not finite"));
    }
    if opts.restarts == 0 {
        return Err(Error::ParamOutOfRange("at least one restart is required"));
    }
    let e = operator_eigenvalues(alpha, theta);
    let top = e[0];
    if s > top + 1e-12 || s < e[3] - 1e-12 {
        return Err(Error::InfeasibleTheta {
            value: s,
            theta,
            max: top,
        });
    }
    let s = s.clamp(e[3], top);

    let mut rng = rng_from_seed(opts.seed);
    let mut best: Option<(f64, DensityMatrix)> = None;
    let mut best_residual = f64::INFINITY;
    for _ in 0..opts.restarts {
        let candidate = match opts.family {
            StateFamily::BellDiagonal => {
                let x0: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
                solve_bell_diagonal(s, &e, measure, &x0)
            }
            StateFamily::General => {
                let x0: Vec<f64> = (0..32).map(|_| rng.sample(StandardNormal)).collect();
                solve_general(s, alpha, theta, measure, &x0)
            }
        };
        let Some((residual, value, witness)) = candidate else {
            continue;
        };
        best_residual = best_residual.min(residual);
        if residual > CONSTRAINT_TOL {
            continue;
        }
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, witness));
        }
    }

    let (e_min, witness) = best.ok_or(Error::SolverFailure {
        residual: best_residual,
    })?;
    Ok(InterplayPoint {
        theta,
        s,
        measure,
        e_min,
        witness,
    })
}

fn weights_from(g: &[f64]) -> [f64; 4] {
    let norm: f64 = g.iter().map(|x| x * x).sum();
    if !(norm > 0.0) {
        return [0.25; 4];
    }
    core::array::from_fn(|i| g[i] * g[i] / norm)
}

fn dot(w: &[f64; 4], e: &[f64; 4]) -> f64 {
    w.iter().zip(e).map(|(a, b)| a * b).sum()
}

/// Moves Bell weights onto `Σ wᵢ eᵢ = S` by mixing with the extremal vertex.
fn repair_weights(w: [f64; 4], e: &[f64; 4], s: f64) -> [f64; 4] {
    let current = dot(&w, e);
    let target = if current < s { 0 } else { 3 };
    let gap = e[target] - current;
    if gap.abs() < 1e-300 {
        return w;
    }
    let t = ((s - current) / gap).clamp(0.0, 1.0);
    let mut out = w.map(|x| (1.0 - t) * x);
    out[target] += t;
    out
}

fn solve_bell_diagonal(
    s: f64,
    e: &[f64; 4],
    measure: MeasureKind,
    x0: &[f64; 4],
) -> Option<(f64, f64, DensityMatrix)> {
    let opts = AugLagOptions {
        inner: NelderMeadOptions {
            initial_step: 0.5,
            max_evals: 4_000,
            ..NelderMeadOptions::default()
        },
        ..AugLagOptions::default()
    };
    let r = augmented_lagrangian(
        |g| measure_bell_diagonal(measure, &weights_from(g)),
        |g| dot(&weights_from(g), e) - s,
        x0,
        &opts,
    );
    if !r.residual.is_finite() {
        return None;
    }
    let w = repair_weights(weights_from(&r.x), e, s);
    Some((
        r.residual,
        measure_bell_diagonal(measure, &w),
        bell_diagonal_from_weights(&w),
    ))
}

fn factor_from(x: &[f64]) -> CMat4 {
    let mut g = CMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let k = 2 * (4 * i + j);
            g.0[i][j] = C64::new(x[k], x[k + 1]);
        }
    }
    g
}

fn solve_general(
    s: f64,
    alpha: f64,
    theta: f64,
    measure: MeasureKind,
    x0: &[f64],
) -> Option<(f64, f64, DensityMatrix)> {
    let scenario = BellScenario::new(alpha, MeasurementQuad::symmetric(theta)).ok()?;
    let op = alpha_chsh_operator(&scenario);
    let state = |x: &[f64]| DensityMatrix::from_factor(&factor_from(x)).ok();
    let opts = AugLagOptions {
        inner: NelderMeadOptions {
            initial_step: 0.5,
            max_evals: 20_000,
            ..NelderMeadOptions::default()
        },
        outer_iters: 20,
        ..AugLagOptions::default()
    };
    let r = augmented_lagrangian(
        |x| state(x).map_or(f64::INFINITY, |rho| measure.evaluate(&rho)),
        |x| state(x).map_or(f64::INFINITY, |rho| rho.expectation(&op) - s),
        x0,
        &opts,
    );
    let rho = state(&r.x)?;
    let current = rho.expectation(&op);
    // Top and bottom eigenvectors of Ŝ_α(θ) are Φ⁺ and Ψ⁻.
    let e = operator_eigenvalues(alpha, theta);
    let (target, value) = if current < s { (0, e[0]) } else { (3, e[3]) };
    let vertex = DensityMatrix::from_pure(&bell_basis()[target]).ok()?;
    let gap = value - current;
    let t = if gap.abs() < 1e-300 {
        0.0
    } else {
        ((s - current) / gap).clamp(0.0, 1.0)
    };
    let repaired = rho.mix(&vertex, t).ok()?;
    Some((r.residual, measure.evaluate(&repaired), repaired))
}

/// Minimum entanglement over the feasible θ-range for one Bell value.
#[derive(Debug, Clone, PartialEq)]
pub struct InterplayCurve {
    pub s: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    /// One point per grid value of θ, in increasing θ.
    pub points: Vec<InterplayPoint>,
    /// The least-entanglement point after refining around the grid minimum.
    pub minimizer: InterplayPoint,
}

/// Sweeps `theta_steps` evenly spaced angles over the feasible range of each
/// `S`, then refines the minimizing angle by golden-section search between
/// the neighbours of the best grid point.
pub fn interplay_scan(
    s_list: &[f64],
    alpha: f64,
    theta_steps: usize,
    measure: MeasureKind,
    opts: &InterplayOptions,
) -> Result<Vec<InterplayCurve>> {
    check_alpha(alpha)?;
    if theta_steps < 2 {
        return Err(Error::ParamOutOfRange("need at least two theta steps"));
    }
    let mut curves = Vec::with_capacity(s_list.len());
    for &s in s_list {
        let (lo, hi) = feasible_theta_range(s, alpha)?;
        check_eigenvalues(alpha, &[lo, hi])?;
        let solve = |theta: f64| min_entanglement_at_theta_with(s, alpha, theta, measure, opts);

        if hi - lo < 1e-12 {
            let p = solve(lo)?;
            curves.push(InterplayCurve {
                s,
                theta_min: lo,
                theta_max: hi,
                points: alloc::vec![p],
                minimizer: p,
            });
            continue;
        }

        let points = (0..theta_steps)
            .map(|k| solve(lo + (hi - lo) * k as f64 / (theta_steps - 1) as f64))
            .collect::<Result<Vec<_>>>()?;
        let mut k_best = 0;
        for (k, p) in points.iter().enumerate() {
            if p.e_min < points[k_best].e_min {
                k_best = k;
            }
        }
        let a = points[k_best.saturating_sub(1)].theta;
        let b = points[(k_best + 1).min(theta_steps - 1)].theta;
        let (theta_ref, _) =
            golden_section(|t| solve(t).map_or(f64::INFINITY, |p| p.e_min), a, b, 1e-7);
        let refined = solve(theta_ref)?;
        let minimizer = if refined.e_min < points[k_best].e_min {
            refined
        } else {
            points[k_best]
        };
        curves.push(InterplayCurve {
            s,
            theta_min: lo,
            theta_max: hi,
            points,
            minimizer,
        });
    }
    Ok(curves)
}

/// Verifies a point against the general measures and the full operator.
pub fn witness_residuals(point: &InterplayPoint, alpha: f64) -> Result<(f64, f64)> {
    let scenario = BellScenario::new(alpha, MeasurementQuad::symmetric(point.theta))?;
    let s_err = (bell_value(&point.witness, &scenario) - point.s).abs();
    let e_err = (point.measure.evaluate(&point.witness) - point.e_min).abs();
    Ok((s_err, e_err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;

    #[test]
    fn tsirelson_point() {
        let p =
            min_entanglement_at_theta(2.0 * SQRT_2, 1.0, FRAC_PI_4, MeasureKind::Concurrence, 8)
                .unwrap();
        assert!((p.e_min - 1.0).abs() < 1e-6);
        let (ds, de) = witness_residuals(&p, 1.0).unwrap();
        assert!(ds < 1e-9 && de < 1e-6);
    }

    #[test]
    fn infeasible_angle() {
        let r = min_entanglement_at_theta(2.4, 1.0, 0.05, MeasureKind::Concurrence, 4);
        assert!(matches!(r, Err(Error::InfeasibleTheta { .. })));
        assert!(max_value_at_theta(1.0, 0.05) < 2.4);
    }

    #[test]
    fn theta_star_values() {
        assert!((theta_star_concurrence(2.0 * SQRT_2, 1.0).unwrap() - FRAC_PI_4).abs() < 1e-12);
        assert!(theta_star_concurrence(2.0 + 1e-12, 1.0).unwrap() < 1e-5);
        let a = 1.2f64;
        let t = theta_star_concurrence(2.0 * (1.0 + a * a).sqrt(), a).unwrap();
        assert!((t - (1.0 / a).atan()).abs() < 1e-12);
        assert!(matches!(
            theta_star_concurrence(2.0, 1.0),
            Err(Error::NoViolation { .. })
        ));
    }

    #[test]
    fn feasible_range_examples() {
        let a = 1.2f64;
        let (_, hi) = feasible_theta_range(3.0, a).unwrap();
        assert_eq!(hi, FRAC_PI_4);
        let smax = 2.0 * (1.0 + a * a).sqrt();
        let (lo, hi) = feasible_theta_range(smax, a).unwrap();
        assert!((lo - (1.0 / a).atan()).abs() < 1e-7 && (hi - lo).abs() < 1e-7);
        let (lo, hi) = feasible_theta_range(3.2, 1.3).unwrap();
        assert!((max_value_at_theta(1.3, lo) - 3.2).abs() < 1e-12);
        assert!(max_value_at_theta(1.3, hi) >= 3.2 - 1e-12);
    }

    #[test]
    fn eigenvalue_check_passes() {
        check_eigenvalues(1.7, &[0.0, 0.3, FRAC_PI_4]).unwrap();
    }

    #[test]
    fn repair_hits_target() {
        let e = operator_eigenvalues(1.3, 0.4);
        let w = repair_weights([0.4, 0.3, 0.2, 0.1], &e, 2.9);
        assert!((dot(&w, &e) - 2.9).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
