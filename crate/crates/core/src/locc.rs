//! Reduction of an arbitrary two-qubit state to Bell-diagonal form by local
//! operations and classical communication, preserving planar Bell values.

#[allow(unused_imports)]
use num_traits::Float;

use crate::bell::MeasurementQuad;
use crate::linalg::{kron, pauli, planar_observable, BellSpectrum, CMat2, DensityMatrix, C64};
use crate::Result;

const ANGLE_TOL: f64 = 1e-12;

/// Record of one reduction.
#[derive(Debug, Clone)]
pub struct LoccTranscript {
    /// Local y-rotation angles `(a, b)` applied in the second step.
    pub rotation: (f64, f64),
    /// Bell-basis weights of the output, ordered Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
    pub weights: [f64; 4],
    /// Largest off-diagonal Bell-basis entry left in the output.
    pub residual: f64,
    /// The reduced state itself.
    pub state: DensityMatrix,
}

impl LoccTranscript {
    /// Angles of the observables that reproduce, on the output state, the
    /// statistics of `quad` on the input state.
    ///
    /// The first and third steps leave every planar Bell value unchanged; the
    /// local rotations of the second step move the measurement plane
    /// rigidly, so the quad is carried along with them.
    pub fn map_quad(&self, quad: &MeasurementQuad) -> MeasurementQuad {
        let (a, b) = self.rotation;
        let (ra, rb) = (y_rotation(a), y_rotation(b));
        MeasurementQuad::new(
            rotate_angle(&ra, quad.a0),
            rotate_angle(&ra, quad.a1),
            rotate_angle(&rb, quad.b0),
            rotate_angle(&rb, quad.b1),
        )
    }
}

/// `R_y(θ) = [[cos θ/2, sin θ/2], [−sin θ/2, cos θ/2]]`.
pub fn y_rotation(theta: f64) -> CMat2 {
    let (s, c) = (0.5 * theta).sin_cos();
    CMat2([
        [C64::new(c, 0.0), C64::new(s, 0.0)],
        [C64::new(-s, 0.0), C64::new(c, 0.0)],
    ])
}

fn rotate_angle(r: &CMat2, theta: f64) -> f64 {
    let o = *r * planar_observable(theta) * r.adjoint();
    let z = 0.5 * o.trace_product(&pauli(3)).re;
    let x = 0.5 * o.trace_product(&pauli(1)).re;
    x.atan2(z)
}

/// Three-step LOCC reduction: twirl with σy⊗σy, rotate locally about y to
/// clear the remaining real Bell coherences, then average with the complex
/// conjugate.
pub fn locc_to_bell_diagonal(rho: &DensityMatrix) -> Result<(BellSpectrum, LoccTranscript)> {
    let yy = kron(&pauli(2), &pauli(2));
    let m = *rho.matrix();
    let step1 = (m + yy * m * yy).scale(0.5);
    let rho1 = DensityMatrix::new(step1)?;

    let bell = rho1.in_bell_basis();
    let d1 = bell.0[0][0].re - bell.0[3][3].re;
    let r1 = bell.0[0][3].re;
    let d2 = bell.0[1][1].re - bell.0[2][2].re;
    let r2 = bell.0[2][1].re;

    // The (Φ⁺, Ψ⁻) block turns by a − b and the (Φ⁻, Ψ⁺) block by −(a + b).
    let x = block_angle(d1, r1);
    let y = -block_angle(d2, r2);
    let (a, b) = (0.5 * (x + y), 0.5 * (y - x));

    let u = kron(&y_rotation(a), &y_rotation(b));
    let step2 = rho1.conjugate_by(&u);
    let m2 = *step2.matrix();
    let step3 = (m2 + m2.conj()).scale(0.5);
    let state = DensityMatrix::new(step3)?;

    let in_bell = state.in_bell_basis();
    let mut residual = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                residual = residual.max(in_bell.0[i][j].norm());
            }
        }
    }
    let weights = state.bell_weights();
    let spectrum = BellSpectrum::from_unsorted(clean_weights(weights))?;
    Ok((
        spectrum,
        LoccTranscript {
            rotation: (a, b),
            weights,
            residual,
            state,
        },
    ))
}

fn clean_weights(w: [f64; 4]) -> [f64; 4] {
    let w = w.map(|x| x.max(0.0));
    let sum: f64 = w.iter().sum();
    w.map(|x| x / sum)
}

/// Real part of the rotated coherence: `½ d sin x + r cos x`.
fn residual_term(d: f64, r: f64, x: f64) -> f64 {
    0.5 * d * x.sin() + r * x.cos()
}

fn block_angle(d: f64, r: f64) -> f64 {
    let x = solve_angle(d, r);
    if residual_term(d, r, x).abs() > ANGLE_TOL {
        bisect_angle(d, r)
    } else {
        x
    }
}

/// Zero of [`residual_term`] in `[−π/2, π/2]`.
fn solve_angle(d: f64, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let sign = if d >= 0.0 { 1.0 } else { -1.0 };
    (-2.0 * r * sign).atan2(d.abs())
}

fn bisect_angle(d: f64, r: f64) -> f64 {
    let half_pi = core::f64::consts::FRAC_PI_2;
    let (mut lo, mut hi) = (-half_pi, half_pi);
    let f_lo = residual_term(d, r, lo);
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = residual_term(d, r, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{bell_value, BellScenario};
    use crate::linalg::bell_diagonal_state;

    fn pure_delta(delta: f64) -> DensityMatrix {
        let (s, c) = delta.sin_cos();
        let z = C64::new(0.0, 0.0);
        DensityMatrix::from_pure(&[C64::new(c, 0.0), z, z, C64::new(s, 0.0)]).unwrap()
    }

    #[test]
    fn bell_diagonal_is_a_fixed_point() {
        let spec = BellSpectrum::new([0.5, 0.3, 0.15, 0.05]).unwrap();
        let (out, t) = locc_to_bell_diagonal(&bell_diagonal_state(&spec)).unwrap();
        assert_eq!(t.rotation, (0.0, 0.0));
        for k in 0..4 {
            assert!((out.lambda()[k] - spec.lambda()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_state_spectrum() {
        let delta = 0.3f64;
        let (out, t) = locc_to_bell_diagonal(&pure_delta(delta)).unwrap();
        let s2 = (2.0 * delta).sin();
        let expected = [0.5 * (1.0 + s2), 0.5 * (1.0 - s2), 0.0, 0.0];
        for k in 0..4 {
            assert!((out.lambda()[k] - expected[k]).abs() < 1e-12);
        }
        assert!(t.residual < 1e-12);
    }

    #[test]
    fn werner_spectrum() {
        let w = BellSpectrum::werner(0.3).unwrap();
        let (out, _) = locc_to_bell_diagonal(&bell_diagonal_state(&w)).unwrap();
        for k in 0..4 {
            assert!((out.lambda()[k] - w.lambda()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn rotated_state_needs_rotation_and_keeps_values() {
        let u = kron(&y_rotation(0.4), &y_rotation(-0.9));
        let rho = pure_delta(0.5).conjugate_by(&u);
        let (_, t) = locc_to_bell_diagonal(&rho).unwrap();
        assert!(t.rotation.0.abs() + t.rotation.1.abs() > 1e-3);
        assert!(t.residual < 1e-12);
        let quad = MeasurementQuad::new(0.1, 1.3, 0.7, -0.4);
        let before = bell_value(&rho, &BellScenario::new(1.3, quad).unwrap());
        let after = bell_value(
            &t.state,
            &BellScenario::new(1.3, t.map_quad(&quad)).unwrap(),
        );
        assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn bisection_agrees_with_closed_form() {
        for &(d, r) in &[(0.3, 0.1), (-0.2, 0.05), (0.0, 0.2), (0.4, -0.3)] {
            let a = solve_angle(d, r);
            let b = bisect_angle(d, r);
            assert!(residual_term(d, r, a).abs() < 1e-14);
            assert!(residual_term(d, r, b).abs() < 1e-12);
        }
    }
}
