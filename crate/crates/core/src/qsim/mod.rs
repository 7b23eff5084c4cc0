//! Dense density-matrix simulation engine.
//!
//! Basis index convention: qubit 0 is the most significant bit, so on an
//! `n`-qubit register qubit `q` occupies bit `n - 1 - q` of the index.

mod channel;
mod circuit;
mod distribution;
pub mod gates;
mod operator;
mod rng;
mod state;

pub use channel::KrausChannel;
pub use circuit::{Circuit, Instruction};
pub use distribution::{sample_counts, OutcomeDistribution};
pub use gates::GateOp;
pub use operator::{walsh_hadamard, Operator};
pub use rng::{derive_seed, rng_from_seed, SimRng};
pub use state::{apply_gate, apply_kraus, basis_probabilities, partial_trace, DensityMatrix};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Matrix = DMatrix<C64>;

/// Tolerance for the Hermiticity and trace invariants of a state.
pub const STATE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-9;
/// Negative diagonal entries above this are float noise and get clamped.
/// Negative diagonal entries below minus this value indicate a corrupted state.
pub const CORRUPT_TOL: f64 = 1e-6;
