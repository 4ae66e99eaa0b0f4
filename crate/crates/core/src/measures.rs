//! Two-qubit entanglement measures.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{
    hermitian_eigensystem, hermitian_eigenvalues2, kron, pauli, singular_values4, CMat4,
    DensityMatrix, C64,
};
use crate::{Error, Result};

const ZERO_EIGENVALUE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    Concurrence,
    EntanglementOfFormation,
    OneWayDistillable,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [
        MeasureKind::Concurrence,
        MeasureKind::EntanglementOfFormation,
        MeasureKind::OneWayDistillable,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::EntanglementOfFormation => "eof",
            MeasureKind::OneWayDistillable => "distillable",
        }
    }

    pub fn evaluate(&self, rho: &DensityMatrix) -> f64 {
        match self {
            MeasureKind::Concurrence => concurrence(rho),
            MeasureKind::EntanglementOfFormation => entanglement_of_formation(rho),
            MeasureKind::OneWayDistillable => one_way_distillable(rho),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `h(p) = −p log₂ p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError(p));
    }
    Ok(plogp(p) + plogp(1.0 - p))
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p <= ZERO_EIGENVALUE {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().map(|&x| plogp(x)).sum()
}

/// Wootters concurrence `max{0, λ₁−λ₂−λ₃−λ₄}`.
///
/// With `ρ = Σ |ψₖ⟩⟨ψₖ|` over subnormalized eigenvectors, the `λᵢ` are the
/// singular values of `τⱼₖ = ψⱼᵀ (σy⊗σy) ψₖ`.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let e = match hermitian_eigensystem(rho.matrix()) {
        Ok(e) => e,
        Err(_) => return 0.0,
    };
    let yy = kron(&pauli(2), &pauli(2));
    let psi: [[C64; 4]; 4] =
        core::array::from_fn(|k| e.vectors[k].map(|z| z * e.values[k].max(0.0).sqrt()));
    let mut tau = CMat4::zeros();
    for j in 0..4 {
        for k in 0..4 {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..4 {
                for b in 0..4 {
                    acc += psi[j][a] * yy.0[a][b] * psi[k][b];
                }
            }
            tau.0[j][k] = acc;
        }
    }
    let l = singular_values4(&tau);
    (l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0)
}

/// `E_F = h((1+√(1−C²))/2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    plogp(0.5 + 0.5 * (1.0 - c * c).sqrt()) + plogp(0.5 - 0.5 * (1.0 - c * c).sqrt())
}

pub fn entanglement_of_formation(rho: &DensityMatrix) -> f64 {
    eof_from_concurrence(concurrence(rho))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.eigenvalues())
}

/// `−H(A|B) = H(ρ_B) − H(ρ_AB)`.
pub fn one_way_distillable(rho: &DensityMatrix) -> f64 {
    let rb = hermitian_eigenvalues2(&rho.reduced_b());
    shannon_entropy(&rb) - von_neumann_entropy(rho)
}

/// Concurrence of a Bell-diagonal state with weights `w`: `max{0, 2 max w − 1}`.
pub fn concurrence_bell_diagonal(w: &[f64; 4]) -> f64 {
    let top = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (2.0 * top - 1.0).max(0.0)
}

/// One-way distillable entanglement of a Bell-diagonal state: `1 − H(λ)`.
pub fn distillable_bell_diagonal(w: &[f64; 4]) -> f64 {
    1.0 - shannon_entropy(w)
}

pub(crate) fn measure_bell_diagonal(kind: MeasureKind, w: &[f64; 4]) -> f64 {
    match kind {
        MeasureKind::Concurrence => concurrence_bell_diagonal(w),
        MeasureKind::EntanglementOfFormation => eof_from_concurrence(concurrence_bell_diagonal(w)),
        MeasureKind::OneWayDistillable => distillable_bell_diagonal(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bell_basis, bell_diagonal_state, BellSpectrum, CMat4};

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let expected = 2.0 - 0.75 * 3f64.log2();
        assert!((binary_entropy(0.25).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.8113).abs() < 1e-4);
        assert_eq!(binary_entropy(1.1), Err(Error::DomainError(1.1)));
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn concurrence_anchors() {
        let phi = DensityMatrix::from_pure(&bell_basis()[0]).unwrap();
        assert!((concurrence(&phi) - 1.0).abs() < 1e-10);
        let product = DensityMatrix::new(CMat4::from_diagonal([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(concurrence(&product) < 1e-10);
        let w = bell_diagonal_state(&BellSpectrum::werner(0.4).unwrap());
        assert!((concurrence(&w) - 0.4).abs() < 1e-10);
    }

    #[test]
    fn eof_anchors() {
        assert!((eof_from_concurrence(1.0) - 1.0).abs() < 1e-15);
        assert_eq!(eof_from_concurrence(0.0), 0.0);
        let v = eof_from_concurrence(0.6);
        assert!((v - binary_entropy(0.9).unwrap()).abs() < 1e-15);
        assert!((v - 0.4690).abs() < 1e-4);
    }

    #[test]
    fn distillable_anchors() {
        let phi = DensityMatrix::from_pure(&bell_basis()[0]).unwrap();
        assert!((one_way_distillable(&phi) - 1.0).abs() < 1e-10);
        assert!((one_way_distillable(&DensityMatrix::maximally_mixed()) + 1.0).abs() < 1e-12);
        let spec = BellSpectrum::new([0.6, 0.25, 0.1, 0.05]).unwrap();
        let rho = bell_diagonal_state(&spec);
        let expected = 1.0 - shannon_entropy(&spec.lambda());
        assert!((one_way_distillable(&rho) - expected).abs() < 1e-10);
        assert!((distillable_bell_diagonal(&spec.lambda()) - expected).abs() < 1e-15);
    }

    #[test]
    fn bell_diagonal_closed_forms_match_general() {
        let spec = BellSpectrum::new([0.7, 0.2, 0.06, 0.04]).unwrap();
        let rho = bell_diagonal_state(&spec);
        assert!((concurrence(&rho) - concurrence_bell_diagonal(&spec.lambda())).abs() < 1e-10);
    }
}
