//! Cyclic Jacobi eigensolvers for the fixed small sizes used in this crate.

#[allow(unused_imports)]
use num_traits::Float;

use super::matrix::{CMat2, CMat4, C64, ZERO};
use crate::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a 4×4 Hermitian matrix.
///
/// `values` are sorted in descending order and `vectors[k]` is the unit
/// eigenvector belonging to `values[k]`.
#[derive(Debug, Clone, Copy)]
pub struct Eigensystem4 {
    pub values: [f64; 4],
    pub vectors: [[C64; 4]; 4],
}

impl Eigensystem4 {
    /// Rebuilds `V f(Λ) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> CMat4 {
        let mut m = CMat4::zeros();
        for (k, v) in self.vectors.iter().enumerate() {
            let w = f(self.values[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..4 {
                for j in 0..4 {
                    m.0[i][j] += v[i] * v[j].conj() * w;
                }
            }
        }
        m
    }
}

/// Eigenvalues (descending) and eigenvectors of a Hermitian 4×4 matrix.
///
/// Fails with [`Error::NonHermitian`] when `m` deviates from its adjoint by
/// more than `1e-10` (relative to its norm when that exceeds one).
pub fn hermitian_eigensystem(m: &CMat4) -> Result<Eigensystem4> {
    let scale = m.frobenius_norm().max(1.0);
    let dev = m.hermitian_deviation();
    if !(dev <= HERMITIAN_TOL * scale) {
        return Err(Error::NonHermitian(dev));
    }

    // Work on the exactly Hermitian part.
    let mut a = (*m + m.adjoint()).scale(0.5);
    for i in 0..4 {
        a.0[i][i] = C64::new(a.0[i][i].re, 0.0);
    }
    let mut v = CMat4::identity();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a.0[j][j].re.total_cmp(&a.0[i][i].re));
    let mut values = [0.0; 4];
    let mut vectors = [[ZERO; 4]; 4];
    for (k, &idx) in order.iter().enumerate() {
        values[k] = a.0[idx][idx].re;
        for r in 0..4 {
            vectors[k][r] = v.0[r][idx];
        }
    }
    Ok(Eigensystem4 { values, vectors })
}

/// Eigenvalues of a Hermitian 4×4 matrix in descending order.
pub fn hermitian_eigenvalues(m: &CMat4) -> Result<[f64; 4]> {
    hermitian_eigensystem(m).map(|e| e.values)
}

fn off_diagonal_norm(a: &CMat4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`: `A ← G† A G`, `V ← V G`.
fn rotate(a: &mut CMat4, v: &mut CMat4, p: usize, q: usize) {
    let b = a.0[p][q];
    let mag = b.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = b / mag;
    let tau = (a.0[q][q].re - a.0[p][p].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = [[c, s], [-s·conj(e), c·conj(e)]] on the (p, q) plane.
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;
    for row in a.0.iter_mut().chain(v.0.iter_mut()) {
        let (x, y) = (row[p], row[q]);
        row[p] = x * c + y * g_qp;
        row[q] = x * s + y * g_qq;
    }
    // Rows of G†: (c, -s·e) and (s, c·e).
    let h_pq = -phase * s;
    let h_qq = phase * c;
    for k in 0..4 {
        let (x, y) = (a.0[p][k], a.0[q][k]);
        a.0[p][k] = x * c + y * h_pq;
        a.0[q][k] = x * s + y * h_qq;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = C64::new(a.0[q][q].re, 0.0);
}

/// Singular values (descending) of a complex 4×4 matrix by one-sided
/// Jacobi. Small singular values keep an absolute error of order
/// `ε‖m‖` instead of the `√ε‖m‖` obtained from the eigenvalues of `m†m`.
pub fn singular_values4(m: &CMat4) -> [f64; 4] {
    let mut cols: [[C64; 4]; 4] = core::array::from_fn(|j| core::array::from_fn(|i| m.0[i][j]));
    let dot =
        |x: &[C64; 4], y: &[C64; 4]| -> C64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let a = dot(&cols[p], &cols[p]).re;
                let b = dot(&cols[q], &cols[q]).re;
                let g = dot(&cols[p], &cols[q]);
                let mag = g.norm();
                if mag <= 1e-15 * (a * b).sqrt() || mag < 1e-300 {
                    continue;
                }
                rotated = true;
                let phase = g.conj() / mag;
                let zeta = (b - a) / (2.0 * mag);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..4 {
                    let x = cols[p][i];
                    let y = cols[q][i] * phase;
                    cols[p][i] = x * c - y * s;
                    cols[q][i] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv = cols.map(|c| dot(&c, &c).re.sqrt());
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Eigenvalues of a Hermitian 2×2 matrix, descending.
pub fn hermitian_eigenvalues2(m: &CMat2) -> [f64; 2] {
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = (m.0[0][1] + m.0[1][0].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + half_gap, mean - half_gap]
}

/// Eigenvalues (descending) of a real symmetric `N×N` matrix by cyclic Jacobi.
pub fn symmetric_eigenvalues<const N: usize>(m: [[f64; N]; N]) -> [f64; N] {
    let mut a = m;
    for i in 0..N {
        for j in (i + 1)..N {
            let avg = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = avg;
            a[j][i] = avg;
        }
    }
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off.sqrt() <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for k in 0..N {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = c * x - s * y;
                    a[q][k] = s * x + c * y;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = a[i][i];
    }
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{kron, pauli};

    fn residual(m: &CMat4, e: &Eigensystem4) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..4 {
            let mv = m.mul_vec(&e.vectors[k]);
            let r: f64 = (0..4)
                .map(|i| (mv[i] - e.vectors[k][i] * e.values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = CMat4::from_diagonal([2.0, 4.0, 1.0, 3.0]);
        let e = hermitian_eigensystem(&m).unwrap();
        assert_eq!(e.values, [4.0, 3.0, 2.0, 1.0]);
        assert!(residual(&m, &e) < 1e-14);
    }

    #[test]
    fn zz_has_doubly_degenerate_spectrum() {
        let m = kron(&pauli(3), &pauli(3));
        let vals = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(vals, [1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = CMat4::identity();
        m.0[0][1] = C64::new(0.5, 0.0);
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(Error::NonHermitian(_))
        ));
    }

    #[test]
    fn complex_hermitian_residuals_are_small() {
        let m = kron(&pauli(2), &pauli(1))
            + kron(&pauli(3), &pauli(2)).scale(0.7)
            + CMat4::from_diagonal([0.1, -0.2, 0.3, 0.05]);
        let e = hermitian_eigensystem(&m).unwrap();
        assert!(residual(&m, &e) < 1e-10);
        // Orthonormal eigenvectors.
        for i in 0..4 {
            for j in 0..4 {
                let ip: C64 = (0..4)
                    .map(|r| e.vectors[i][r].conj() * e.vectors[j][r])
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn map_values_reconstructs_input() {
        let m = kron(&pauli(1), &pauli(1)).scale(0.3) + CMat4::from_diagonal([0.4, 0.1, 0.2, 0.3]);
        let e = hermitian_eigensystem(&m).unwrap();
        assert!(e.map_values(|x| x).max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn two_by_two_closed_form() {
        let vals = hermitian_eigenvalues2(&pauli(2));
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn real_symmetric_three_by_three() {
        // Eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2+√2, 2, 2−√2.
        let vals = symmetric_eigenvalues([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]);
        let r2 = core::f64::consts::SQRT_2;
        assert!((vals[0] - (2.0 + r2)).abs() < 1e-13);
        assert!((vals[1] - 2.0).abs() < 1e-13);
        assert!((vals[2] - (2.0 - r2)).abs() < 1e-13);
    }
}
