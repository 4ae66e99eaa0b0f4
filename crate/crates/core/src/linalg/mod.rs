//! Exact-size complex linear algebra and two-qubit state constructors.

mod eigen;
mod matrix;
mod state;

pub use eigen::{
    hermitian_eigensystem, hermitian_eigenvalues, hermitian_eigenvalues2, singular_values4,
    symmetric_eigenvalues, Eigensystem4,
};
pub use matrix::{kron, pauli, planar_observable, CMat2, CMat4, C64};
pub use state::{
    bell_basis, bell_diagonal_state, correlation_matrix, BellSpectrum, CorrelationMatrix,
    DensityMatrix, SPECTRUM_TOL, STATE_TOL,
};

#[allow(unused_imports)]
pub(crate) use state::bell_diagonal_from_weights;
