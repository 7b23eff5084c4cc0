//! Density-matrix simulation of intermodule GHZ circuits built either from
//! remote CNOT gates over noisy transducer links or from quasiprobability
//! CNOT gate cuts, together with the sweep harness that compares the two.
//!
//! Qubit 0 is the most significant bit of every basis index.

// Validation writes `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cutting;
pub mod error;
pub mod experiments;
pub mod metrics;
pub mod noise;
pub mod qsim;
pub mod telegate;

pub use error::{Error, Result};
