//! α-CHSH operators, Bell values, bounds and maximal violations.
//!
//! Observables are confined to the x–z plane of the Bloch sphere and stored
//! as angles: `θ ↦ cos θ σz + sin θ σx`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{
    correlation_matrix, kron, pauli, planar_observable, symmetric_eigenvalues, BellSpectrum, CMat2,
    CMat4, DensityMatrix,
};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::{Error, Result};

/// Angles of the four planar observables `(Â₀, Â₁, B̂₀, B̂₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementQuad {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

impl MeasurementQuad {
    pub const fn new(a0: f64, a1: f64, b0: f64, b1: f64) -> Self {
        Self { a0, a1, b0, b1 }
    }

    /// `Â₀ = σz`, `Â₁ = σx`, `B̂₀,₁ = cos θ σz ± sin θ σx`.
    ///
    /// Alice is maximally incompatible; Bob's incompatibility is set by `θ`.
    pub const fn symmetric(theta: f64) -> Self {
        Self::new(0.0, FRAC_PI_2, theta, -theta)
    }

    /// The CHSH-optimal configuration for |Φ⁺⟩ at α = 1.
    pub const fn tsirelson() -> Self {
        Self::symmetric(FRAC_PI_4)
    }

    pub fn angles(&self) -> [f64; 4] {
        [self.a0, self.a1, self.b0, self.b1]
    }

    pub fn from_angles(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.angles().iter().all(|x| x.is_finite())
    }

    pub fn observables(&self) -> [CMat2; 4] {
        self.angles().map(planar_observable)
    }
}

/// An α-CHSH expression together with the measurements it is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellScenario {
    alpha: f64,
    quad: MeasurementQuad,
}

impl BellScenario {
    pub fn new(alpha: f64, quad: MeasurementQuad) -> Result<Self> {
        check_alpha(alpha)?;
        if !quad.is_finite() {
            return Err(Error::ParamOutOfRange("measurement angle is not finite"));
        }
        Ok(Self { alpha, quad })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn quad(&self) -> &MeasurementQuad {
        &self.quad
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// `Ŝ_α = α Â₀⊗B̂₀ + α Â₀⊗B̂₁ + Â₁⊗B̂₀ − Â₁⊗B̂₁`.
pub fn alpha_chsh_operator(scenario: &BellScenario) -> CMat4 {
    let [a0, a1, b0, b1] = scenario.quad.observables();
    let alpha = scenario.alpha;
    (kron(&a0, &b0) + kron(&a0, &b1)).scale(alpha) + kron(&a1, &b0) - kron(&a1, &b1)
}

/// `S = Tr(ρ Ŝ_α)`.
pub fn bell_value(rho: &DensityMatrix, scenario: &BellScenario) -> f64 {
    rho.expectation(&alpha_chsh_operator(scenario))
}

/// Classical (local) and quantum bounds `(2α, 2√(α²+1))`.
pub fn bounds(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    Ok((2.0 * alpha, quantum_bound(alpha)))
}

pub(crate) fn quantum_bound(alpha: f64) -> f64 {
    2.0 * (alpha * alpha + 1.0).sqrt()
}

/// Maximal α-CHSH value of a Bell-diagonal state:
/// `2√(α²(λ₁+λ₂−λ₃−λ₄)² + (λ₁−λ₂+λ₃−λ₄)²)`.
pub fn max_violation_bell_diagonal(spectrum: &BellSpectrum, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let [t11, _, t33] = spectrum.correlation_diagonal();
    Ok(2.0 * (alpha * alpha * t33 * t33 + t11 * t11).sqrt())
}

/// Bob's optimal angle `θ` with `tan θ = (λ₁−λ₂+λ₃−λ₄) / [α(λ₁+λ₂−λ₃−λ₄)]`.
pub fn optimal_theta_bell_diagonal(spectrum: &BellSpectrum, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let [t11, _, t33] = spectrum.correlation_diagonal();
    if !(t33 > 1e-15) {
        return Err(Error::DegenerateState);
    }
    Ok((t11 / (alpha * t33)).atan())
}

/// Measurements attaining [`max_violation_bell_diagonal`]: Alice measures σz
/// and σx, Bob measures `cos θ σz ± sin θ σx`.
pub fn optimal_measurements_bell_diagonal(
    spectrum: &BellSpectrum,
    alpha: f64,
) -> Result<MeasurementQuad> {
    optimal_theta_bell_diagonal(spectrum, alpha).map(MeasurementQuad::symmetric)
}

/// Singular values `(s₁, s₂)`, `s₁ ≥ s₂ ≥ 0`, of a real 2×2 matrix.
pub(crate) fn singular_values2(m: [[f64; 2]; 2]) -> (f64, f64) {
    let [[a, b], [c, d]] = m;
    let p = ((a + d) * (a + d) + (c - b) * (c - b)).sqrt();
    let q = ((a - d) * (a - d) + (b + c) * (b + c)).sqrt();
    (0.5 * (p + q), 0.5 * (p - q).abs())
}

/// Maximal α-CHSH value of an arbitrary two-qubit state.
///
/// With `plane_restricted` the observables are confined to the x–z plane and
/// `s₁ ≥ s₂` are the singular values of `[[T₁₁, T₁₃], [T₃₁, T₃₃]]`; otherwise
/// they are the two largest singular values of the full correlation matrix.
/// The value is `2√(α²s₁² + s₂²)`.
pub fn max_violation_general(
    rho: &DensityMatrix,
    alpha: f64,
    plane_restricted: bool,
) -> Result<f64> {
    check_alpha(alpha)?;
    let t = correlation_matrix(rho);
    let (s1, s2) = if plane_restricted {
        singular_values2(t.xz_block())
    } else {
        let m = t.t;
        let mut tt = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                tt[i][j] = (0..3).map(|k| m[k][i] * m[k][j]).sum();
            }
        }
        let ev = symmetric_eigenvalues(tt);
        (ev[0].max(0.0).sqrt(), ev[1].max(0.0).sqrt())
    };
    Ok(2.0 * (alpha * alpha * s1 * s1 + s2 * s2).sqrt())
}

/// Numerical maximum of `Tr(ρ Ŝ_α)` over four planar observables.
///
/// For fixed Alice angles the value is linear in `(cos φ, sin φ)` of each
/// Bob angle, so Bob's optimum is a vector norm. Alice's two angles are
/// searched on a `grid_steps × grid_steps` grid over `[0, 2π)` and the best
/// cell is refined by Nelder–Mead. Serves as an independent check on the
/// closed-form maxima.
pub fn max_violation_bruteforce(rho: &DensityMatrix, alpha: f64, grid_steps: usize) -> f64 {
    bruteforce_search(rho, alpha, grid_steps).0
}

pub(crate) fn bruteforce_search(
    rho: &DensityMatrix,
    alpha: f64,
    grid_steps: usize,
) -> (f64, MeasurementQuad) {
    let n = grid_steps.max(8);
    let step = 2.0 * PI / n as f64;
    let (z, x) = (pauli(3), pauli(1));
    // ⟨A(φ) ⊗ Z⟩ and ⟨A(φ) ⊗ X⟩
    let bob_vector = |phi: f64| -> [f64; 2] {
        let a = planar_observable(phi);
        [
            rho.expectation(&kron(&a, &z)),
            rho.expectation(&kron(&a, &x)),
        ]
    };
    let combine = |u0: [f64; 2], u1: [f64; 2]| -> (f64, f64, f64) {
        let p = [alpha * u0[0] + u1[0], alpha * u0[1] + u1[1]];
        let m = [alpha * u0[0] - u1[0], alpha * u0[1] - u1[1]];
        (
            p[0].hypot(p[1]) + m[0].hypot(m[1]),
            p[1].atan2(p[0]),
            m[1].atan2(m[0]),
        )
    };

    let u: Vec<[f64; 2]> = (0..n).map(|i| bob_vector(i as f64 * step)).collect();
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for (i, &ui) in u.iter().enumerate() {
        for (j, &uj) in u.iter().enumerate() {
            let v = combine(ui, uj).0;
            if v > best.0 {
                best = (v, i as f64 * step, j as f64 * step);
            }
        }
    }

    let opts = NelderMeadOptions {
        initial_step: step,
        f_tol: 1e-15,
        x_tol: 1e-12,
        ..NelderMeadOptions::default()
    };
    let m = nelder_mead(
        |a| -combine(bob_vector(a[0]), bob_vector(a[1])).0,
        &[best.1, best.2],
        &opts,
    );
    let (a0, a1) = if -m.value > best.0 {
        (m.x[0], m.x[1])
    } else {
        (best.1, best.2)
    };
    let (value, b0, b1) = combine(bob_vector(a0), bob_vector(a1));
    (value, MeasurementQuad::new(a0, a1, b0, b1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bell_basis, bell_diagonal_state, hermitian_eigenvalues, pauli};
    use core::f64::consts::SQRT_2;

    fn phi_plus() -> DensityMatrix {
        DensityMatrix::from_pure(&bell_basis()[0]).unwrap()
    }

    fn werner(p: f64) -> DensityMatrix {
        bell_diagonal_state(&BellSpectrum::werner(p).unwrap())
    }

    #[test]
    fn tsirelson_operator_top_eigenvalue() {
        let s = BellScenario::new(1.0, MeasurementQuad::tsirelson()).unwrap();
        let ev = hermitian_eigenvalues(&alpha_chsh_operator(&s)).unwrap();
        assert!((ev[0] - 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn compatible_measurements_stay_classical() {
        let s = BellScenario::new(1.0, MeasurementQuad::new(0.0, 0.0, 0.0, 0.0)).unwrap();
        let ev = hermitian_eigenvalues(&alpha_chsh_operator(&s)).unwrap();
        assert!((ev[0] - 2.0).abs() < 1e-12 && (ev[3] + 2.0).abs() < 1e-12);
        assert!(ev.iter().all(|e| (e.abs() - 2.0).abs() < 1e-12));
    }

    #[test]
    fn commuting_bob_side_gives_four_zz() {
        let s = BellScenario::new(2.0, MeasurementQuad::new(0.0, FRAC_PI_2, 0.0, 0.0)).unwrap();
        let op = alpha_chsh_operator(&s);
        let expected = kron(&pauli(3), &pauli(3)).scale(4.0);
        assert!(op.max_abs_diff(&expected) < 1e-15);
        assert!((hermitian_eigenvalues(&op).unwrap()[0] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_below_one_is_rejected() {
        assert_eq!(
            BellScenario::new(0.9, MeasurementQuad::tsirelson()),
            Err(Error::AlphaOutOfRange(0.9))
        );
        assert!(bounds(0.5).is_err());
        assert!(bounds(f64::NAN).is_err());
    }

    #[test]
    fn bell_values() {
        let s = BellScenario::new(1.0, MeasurementQuad::tsirelson()).unwrap();
        assert!(bell_value(&DensityMatrix::maximally_mixed(), &s).abs() < 1e-15);
        assert!((bell_value(&phi_plus(), &s) - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((bell_value(&werner(0.5), &s) - SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn bounds_values() {
        assert_eq!(bounds(1.0).unwrap(), (2.0, 2.0 * SQRT_2));
        assert_eq!(bounds(1.5).unwrap(), (3.0, 2.0 * 3.25f64.sqrt()));
        let a = SQRT_2 + 1.0;
        let (c, q) = bounds(a).unwrap();
        assert!((c - (2.0 * SQRT_2 + 2.0)).abs() < 1e-14);
        assert!((q - 2.0 * (4.0 + 2.0 * SQRT_2).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn bell_diagonal_values() {
        let pure = BellSpectrum::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((max_violation_bell_diagonal(&pure, 1.0).unwrap() - 2.0 * SQRT_2).abs() < 1e-15);
        let mixed = BellSpectrum::new([0.25; 4]).unwrap();
        assert_eq!(max_violation_bell_diagonal(&mixed, 1.7).unwrap(), 0.0);
        for &(p, a) in &[(0.2, 1.5), (0.5, 1.0), (0.9, 2.3)] {
            let w = BellSpectrum::werner(p).unwrap();
            let expected = 2.0 * (1.0 - p) * (1.0 + a * a).sqrt();
            assert!((max_violation_bell_diagonal(&w, a).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn optimal_angles() {
        let pure = BellSpectrum::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let q = optimal_measurements_bell_diagonal(&pure, 1.0).unwrap();
        assert!((q.b0 - FRAC_PI_4).abs() < 1e-15);
        let q = optimal_measurements_bell_diagonal(&pure, 1.2).unwrap();
        assert!((q.b0 - (1.0f64 / 1.2).atan()).abs() < 1e-15);

        let half = BellSpectrum::new([0.5, 0.5, 0.0, 0.0]).unwrap();
        let q = optimal_measurements_bell_diagonal(&half, 1.0).unwrap();
        assert_eq!(q.b0, 0.0);
        let s = BellScenario::new(1.0, q).unwrap();
        assert!((bell_value(&bell_diagonal_state(&half), &s) - 2.0).abs() < 1e-14);

        let flat = BellSpectrum::new([0.25; 4]).unwrap();
        assert_eq!(
            optimal_measurements_bell_diagonal(&flat, 1.0),
            Err(Error::DegenerateState)
        );
    }

    #[test]
    fn general_formula_on_phi_plus_and_mixed() {
        for plane in [true, false] {
            let v = max_violation_general(&phi_plus(), 1.0, plane).unwrap();
            assert!((v - 2.0 * SQRT_2).abs() < 1e-12);
            let v = max_violation_general(&DensityMatrix::maximally_mixed(), 1.3, plane).unwrap();
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn bruteforce_anchors() {
        let v = max_violation_bruteforce(&phi_plus(), 1.0, 64);
        assert!((v - 2.0 * SQRT_2).abs() < 1e-4);
        let v = max_violation_bruteforce(&werner(0.2), 1.5, 64);
        assert!((v - 2.0 * 0.8 * 3.25f64.sqrt()).abs() < 1e-4);
        let product = DensityMatrix::new(CMat4::from_diagonal([1.0, 0.0, 0.0, 0.0])).unwrap();
        let v = max_violation_bruteforce(&product, 1.0, 64);
        assert!((v - 2.0).abs() < 1e-4);
    }

    #[test]
    fn singular_values_of_rotation_and_diagonal() {
        let (s1, s2) = singular_values2([[0.0, -2.0], [2.0, 0.0]]);
        assert!((s1 - 2.0).abs() < 1e-15 && (s2 - 2.0).abs() < 1e-15);
        let (s1, s2) = singular_values2([[-0.3, 0.0], [0.0, 0.7]]);
        assert!((s1 - 0.7).abs() < 1e-15 && (s2 - 0.3).abs() < 1e-15);
    }
}
