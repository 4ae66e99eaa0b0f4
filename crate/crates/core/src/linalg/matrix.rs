use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2(pub [[C64; 2]; 2]);

/// Dense 4×4 complex matrix, row-major. Two-qubit operators use the
/// computational basis order |00⟩, |01⟩, |10⟩, |11⟩ with qubit A first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4(pub [[C64; 4]; 4]);

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        impl $name {
            pub const fn zeros() -> Self {
                Self([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = ONE;
                }
                m
            }

            pub fn from_diagonal(d: [f64; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = C64::new(d[i], 0.0);
                }
                m
            }

            #[inline]
            pub fn get(&self, row: usize, col: usize) -> C64 {
                self.0[row][col]
            }

            pub fn adjoint(&self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = self.0[j][i].conj();
                    }
                }
                m
            }

            /// Entrywise complex conjugate (not the adjoint).
            pub fn conj(&self) -> Self {
                let mut m = *self;
                for row in m.0.iter_mut() {
                    for z in row.iter_mut() {
                        *z = z.conj();
                    }
                }
                m
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.0[i][i]).sum()
            }

            pub fn scale(&self, s: f64) -> Self {
                let mut m = *self;
                for row in m.0.iter_mut() {
                    for z in row.iter_mut() {
                        *z *= s;
                    }
                }
                m
            }

            /// `Tr(self · other)` without forming the product.
            pub fn trace_product(&self, other: &Self) -> C64 {
                let mut acc = ZERO;
                for i in 0..$n {
                    for k in 0..$n {
                        acc += self.0[i][k] * other.0[k][i];
                    }
                }
                acc
            }

            /// Largest entrywise deviation from Hermiticity, `max |M_ij − conj(M_ji)|`.
            pub fn hermitian_deviation(&self) -> f64 {
                let mut worst = 0.0f64;
                for i in 0..$n {
                    for j in i..$n {
                        worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
                    }
                }
                worst
            }

            pub fn frobenius_norm(&self) -> f64 {
                self.0
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                let mut worst = 0.0f64;
                for i in 0..$n {
                    for j in 0..$n {
                        worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
                    }
                }
                worst
            }

            pub fn mul_vec(&self, v: &[C64; $n]) -> [C64; $n] {
                let mut out = [ZERO; $n];
                for i in 0..$n {
                    for j in 0..$n {
                        out[i] += self.0[i][j] * v[j];
                    }
                }
                out
            }
        }

        impl Mul for $name {
            type Output = Self;

            fn mul(self, rhs: Self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for k in 0..$n {
                        let a = self.0[i][k];
                        if a == ZERO {
                            continue;
                        }
                        for j in 0..$n {
                            m.0[i][j] += a * rhs.0[k][j];
                        }
                    }
                }
                m
            }
        }

        impl Add for $name {
            type Output = Self;

            fn add(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] += rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = Self;

            fn sub(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] -= rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Neg for $name {
            type Output = Self;

            fn neg(self) -> Self {
                self.scale(-1.0)
            }
        }
    };
}

square_matrix!(CMat2, 2);
square_matrix!(CMat4, 4);

/// Pauli matrix σ₁ (x), σ₂ (y) or σ₃ (z).
///
/// # Panics
///
/// Panics if `index` is not 1, 2 or 3.
pub fn pauli(index: u8) -> CMat2 {
    let i = C64::new(0.0, 1.0);
    match index {
        1 => CMat2([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMat2([[ZERO, -i], [i, ZERO]]),
        3 => CMat2([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index must be 1, 2 or 3, got {index}"),
    }
}

/// The qubit observable `cos θ σz + sin θ σx`.
pub fn planar_observable(theta: f64) -> CMat2 {
    let (s, c) = theta.sin_cos();
    CMat2([
        [C64::new(c, 0.0), C64::new(s, 0.0)],
        [C64::new(s, 0.0), C64::new(-c, 0.0)],
    ])
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut m = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}
