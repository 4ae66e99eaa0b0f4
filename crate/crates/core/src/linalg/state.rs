use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)]
use num_traits::Float;

use super::eigen::hermitian_eigenvalues;
use super::matrix::{kron, pauli, CMat2, CMat4, C64, ZERO};
use crate::{Error, Result};

pub const STATE_TOL: f64 = 1e-10;
pub const SPECTRUM_TOL: f64 = 1e-12;

/// A validated two-qubit density matrix: Hermitian, unit trace and positive
/// semidefinite, each to within `1e-10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(CMat4);

impl DensityMatrix {
    pub fn new(m: CMat4) -> Result<Self> {
        if m.0
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidState("non-finite entry"));
        }
        let dev = m.hermitian_deviation();
        if dev > STATE_TOL {
            return Err(Error::NonHermitian(dev));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState("trace differs from one"));
        }
        let vals = hermitian_eigenvalues(&m)?;
        if vals[3] < -STATE_TOL {
            return Err(Error::InvalidState("negative eigenvalue"));
        }
        Ok(Self(m))
    }

    /// Builds `GG† / Tr(GG†)`, which is a valid state for any nonzero `G`.
    pub fn from_factor(g: &CMat4) -> Result<Self> {
        let m = *g * g.adjoint();
        let tr = m.trace().re;
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::InvalidState("zero factor"));
        }
        let mut m = m.scale(1.0 / tr);
        symmetrize(&mut m);
        Ok(Self(m))
    }

    /// Projector onto the normalized pure state `ket`.
    pub fn from_pure(ket: &[C64; 4]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState("zero state vector"));
        }
        let v: [C64; 4] = core::array::from_fn(|i| ket[i] / norm);
        let mut m = CMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = v[i] * v[j].conj();
            }
        }
        symmetrize(&mut m);
        Ok(Self(m))
    }

    pub fn maximally_mixed() -> Self {
        Self(CMat4::identity().scale(0.25))
    }

    /// Convex combination `(1 − w)·self + w·other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::ParamOutOfRange("mixing weight outside [0, 1]"));
        }
        Ok(Self(self.0.scale(1.0 - w) + other.0.scale(w)))
    }

    /// Conjugation `U ρ U†` by a unitary.
    pub fn conjugate_by(&self, u: &CMat4) -> Self {
        let mut m = *u * self.0 * u.adjoint();
        symmetrize(&mut m);
        Self(m)
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        // Valid states are Hermitian by construction.
        hermitian_eigenvalues(&self.0).expect("density matrix is Hermitian")
    }

    /// Expectation value `Re Tr(ρ O)`.
    pub fn expectation(&self, op: &CMat4) -> f64 {
        self.0.trace_product(op).re
    }

    /// Reduced state of qubit B, `Tr_A ρ`.
    pub fn reduced_b(&self) -> CMat2 {
        let mut r = CMat2::zeros();
        for i in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    r.0[k][l] += self.0 .0[2 * i + k][2 * i + l];
                }
            }
        }
        r
    }

    /// Reduced state of qubit A, `Tr_B ρ`.
    pub fn reduced_a(&self) -> CMat2 {
        let mut r = CMat2::zeros();
        for k in 0..2 {
            for l in 0..2 {
                for j in 0..2 {
                    r.0[k][l] += self.0 .0[2 * k + j][2 * l + j];
                }
            }
        }
        r
    }

    /// Populations `⟨b|ρ|b⟩` on the Bell basis, ordered Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
    pub fn bell_weights(&self) -> [f64; 4] {
        let basis = bell_basis();
        core::array::from_fn(|k| {
            let v = self.0.mul_vec(&basis[k]);
            (0..4).map(|i| basis[k][i].conj() * v[i]).sum::<C64>().re
        })
    }

    /// Matrix elements on the Bell basis, `⟨b_i|ρ|b_j⟩`.
    pub fn in_bell_basis(&self) -> CMat4 {
        let basis = bell_basis();
        let mut out = CMat4::zeros();
        for j in 0..4 {
            let v = self.0.mul_vec(&basis[j]);
            for i in 0..4 {
                out.0[i][j] = (0..4).map(|r| basis[i][r].conj() * v[r]).sum();
            }
        }
        out
    }
}

fn symmetrize(m: &mut CMat4) {
    let h = (*m + m.adjoint()).scale(0.5);
    *m = h;
}

/// The Bell basis Φ⁺, Φ⁻, Ψ⁺, Ψ⁻ written in the computational basis.
pub fn bell_basis() -> [[C64; 4]; 4] {
    let s = C64::new(FRAC_1_SQRT_2, 0.0);
    [
        [s, ZERO, ZERO, s],
        [s, ZERO, ZERO, -s],
        [ZERO, s, s, ZERO],
        [ZERO, s, -s, ZERO],
    ]
}

/// Sorted Bell-diagonal spectrum `λ₁ ≥ λ₂ ≥ λ₃ ≥ λ₄ ≥ 0`, `Σλ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellSpectrum([f64; 4]);

impl BellSpectrum {
    pub fn new(lambda: [f64; 4]) -> Result<Self> {
        if lambda.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite weight"));
        }
        if lambda.iter().any(|&x| x < -SPECTRUM_TOL) {
            return Err(Error::InvalidSpectrum("negative weight"));
        }
        if lambda.windows(2).any(|w| w[0] < w[1] - SPECTRUM_TOL) {
            return Err(Error::InvalidSpectrum("weights not sorted descending"));
        }
        let sum: f64 = lambda.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_TOL {
            return Err(Error::InvalidSpectrum("weights do not sum to one"));
        }
        Ok(Self(lambda.map(|x| x.max(0.0))))
    }

    /// Sorts arbitrary Bell weights into a spectrum. Weights are relabeled by
    /// local unitaries, so the ordering carries no physical content.
    pub fn from_unsorted(mut weights: [f64; 4]) -> Result<Self> {
        weights.sort_by(|a, b| b.total_cmp(a));
        Self::new(weights)
    }

    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ParamOutOfRange("Werner parameter outside [0, 1]"));
        }
        Self::new([1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p])
    }

    pub fn lambda(&self) -> [f64; 4] {
        self.0
    }

    /// The diagonal of the correlation matrix, `(T₁₁, T₂₂, T₃₃)`.
    pub fn correlation_diagonal(&self) -> [f64; 3] {
        let [l1, l2, l3, l4] = self.0;
        [
            (l1 + l3) - (l2 + l4),
            (l3 + l2) - (l1 + l4),
            (l1 + l2) - (l3 + l4),
        ]
    }
}

/// Bell-diagonal state with weights on Φ⁺, Φ⁻, Ψ⁺, Ψ⁻ (in that order).
pub fn bell_diagonal_state(spectrum: &BellSpectrum) -> DensityMatrix {
    bell_diagonal_from_weights(&spectrum.lambda())
}

/// Like [`bell_diagonal_state`] for weights that need not be sorted. The
/// caller guarantees nonnegative weights summing to one.
pub(crate) fn bell_diagonal_from_weights(w: &[f64; 4]) -> DensityMatrix {
    // Φ± span {|00⟩,|11⟩}; Ψ± span {|01⟩,|10⟩}.
    let mut m = CMat4::zeros();
    let phi_sum = 0.5 * (w[0] + w[1]);
    let phi_diff = 0.5 * (w[0] - w[1]);
    let psi_sum = 0.5 * (w[2] + w[3]);
    let psi_diff = 0.5 * (w[2] - w[3]);
    m.0[0][0] = C64::new(phi_sum, 0.0);
    m.0[3][3] = C64::new(phi_sum, 0.0);
    m.0[0][3] = C64::new(phi_diff, 0.0);
    m.0[3][0] = C64::new(phi_diff, 0.0);
    m.0[1][1] = C64::new(psi_sum, 0.0);
    m.0[2][2] = C64::new(psi_sum, 0.0);
    m.0[1][2] = C64::new(psi_diff, 0.0);
    m.0[2][1] = C64::new(psi_diff, 0.0);
    DensityMatrix(m)
}

/// Real 3×3 correlation tensor `T_ij = Tr[ρ (σ_i ⊗ σ_j)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix {
    pub t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    /// The x–z block `[[T₁₁, T₁₃], [T₃₁, T₃₃]]`.
    pub fn xz_block(&self) -> [[f64; 2]; 2] {
        [[self.t[0][0], self.t[0][2]], [self.t[2][0], self.t[2][2]]]
    }
}

pub fn correlation_matrix(rho: &DensityMatrix) -> CorrelationMatrix {
    let paulis = [pauli(1), pauli(2), pauli(3)];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = rho.expectation(&kron(&paulis[i], &paulis[j]));
        }
    }
    CorrelationMatrix { t }
}
