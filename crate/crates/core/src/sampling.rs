//! Seeded random states, local unitaries and measurement quads.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bell::MeasurementQuad;
use crate::linalg::{kron, CMat2, CMat4, DensityMatrix, C64};

/// Deterministic generator used throughout the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix with i.i.d. standard normal entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    let mut g = CMat4::zeros();
    for z in g.0.iter_mut().flatten() {
        *z = complex_normal(rng);
    }
    g
}

/// Mixed state `GG†/Tr(GG†)` from the Hilbert–Schmidt ensemble.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    DensityMatrix::from_factor(&ginibre(rng)).expect("Ginibre factor is nonzero")
}

/// Haar-random pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let ket: [C64; 4] = core::array::from_fn(|_| complex_normal(rng));
    DensityMatrix::from_pure(&ket).expect("Gaussian vector is nonzero")
}

/// Haar-random element of SU(2), from a uniformly random unit quaternion.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let q: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    let u = C64::new(a, b);
    let v = C64::new(c, d);
    CMat2([[u, -v.conj()], [v, u.conj()]])
}

/// Random product unitary `U_A ⊗ U_B`.
pub fn random_local_unitary<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    let ua = random_su2(rng);
    let ub = random_su2(rng);
    kron(&ua, &ub)
}

/// Four independent angles uniform on `[0, 2π)`.
pub fn random_quad<R: Rng + ?Sized>(rng: &mut R) -> MeasurementQuad {
    MeasurementQuad::from_angles(core::array::from_fn(|_| rng.gen::<f64>() * 2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = random_state(&mut rng_from_seed(7));
        let b = random_state(&mut rng_from_seed(7));
        assert_eq!(a, b);
        let c = random_state(&mut rng_from_seed(8));
        assert_ne!(a, c);
    }

    #[test]
    fn su2_is_unitary() {
        let mut rng = rng_from_seed(1);
        for _ in 0..20 {
            let u = random_su2(&mut rng);
            assert!((u * u.adjoint()).max_abs_diff(&CMat2::identity()) < 1e-14);
        }
    }

    #[test]
    fn pure_states_have_unit_purity() {
        let mut rng = rng_from_seed(2);
        let rho = random_pure_state(&mut rng);
        let p = rho.matrix().trace_product(rho.matrix()).re;
        assert!((p - 1.0).abs() < 1e-12);
    }
}
