//! Transducer-derived Bell-pair noise, the replacement channel that injects
//! it, and local depolarizing gate errors.

mod depolarizing;
mod model;
mod replacement;
mod transducer;

pub use depolarizing::{depolarizing_channel, pauli_error_probability, DepolarizingSpec, FidelityConvention};
pub use model::{GateRole, NoiseModel, NoisePlacement};
pub use replacement::replacement_channel;
pub use transducer::{bell_coefficients, bell_density_matrix, dark_count_probability, psi_plus, BellCoefficients, NoisyBellState, TransducerParams};
