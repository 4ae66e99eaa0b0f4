//! Device-independent entanglement certification from tilted CHSH Bell values.
//!
//! The crate computes lower bounds on concurrence, entanglement of formation and
//! one-way distillable entanglement implied by an observed value `S` of the
//! α-CHSH expression
//!
//! ```text
//! S_α = α A0⊗B0 + α A0⊗B1 + A1⊗B0 − A1⊗B1,    α ≥ 1
//! ```
//!
//! together with the supporting machinery: fixed-size complex linear algebra
//! for two qubits, Bell-value evaluation and maximal violations, the
//! LOCC reduction of an arbitrary two-qubit state to Bell-diagonal form, the
//! entanglement measures themselves, the trade-off between entanglement and
//! measurement incompatibility, and simulated Bell-test scenarios.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command-line front end live in the `bellcert` crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bell;
pub mod estimation;
pub mod interplay;
pub mod linalg;
pub mod locc;
pub mod measures;
pub mod optimize;
pub mod sampling;
pub mod scenarios;

mod error;

pub use error::{Error, Result};

pub use bell::{BellScenario, MeasurementQuad};
pub use estimation::{AssumptionLevel, BoundResult};
pub use linalg::{BellSpectrum, CMat2, CMat4, CorrelationMatrix, DensityMatrix};
pub use measures::MeasureKind;
