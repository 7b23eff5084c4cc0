//! Quasiprobability cutting of the intermodule CNOTs of a GHZ circuit.
//!
//! The GHZ-n circuit is H on qubit 0 followed by CNOT(0 → k) for k = 1..n−1,
//! and every CNOT is cut. Each cut contributes one outcome (i, j, k) of the
//! Pauli decomposition: i = j applies A_i ⊗ B_i directly, i ≠ j runs a double
//! Hadamard test with one ancilla per side.

mod decomposition;
mod estimate;
mod reconstruct;
mod subexperiment;
mod table;

pub use decomposition::{cnot_decomposition, CutTerm, PauliCutDecomposition, QpdOutcome, QpdSampler};
pub use estimate::{
    exact_cut_expectations, expected_cut_expectations, sample_cut_estimate, sample_cut_estimate_with, stratified_cut_estimate,
    uncut_expectations, CutAllocation,
};
pub use reconstruct::{largest_remainder, reconstruct_distribution, ReconstructionResult};
pub use subexperiment::{ShotRecord, SubExperiment};
pub use table::{CutTable, GroupedObservable};
