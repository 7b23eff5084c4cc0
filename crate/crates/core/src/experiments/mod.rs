//! Sweeps over transducer noise and shot budget, threshold and crossover
//! extraction, the greedy link scheduler and result emission.

mod analysis;
mod config;
mod emit;
mod schedule;
mod sweep;

pub use analysis::{
    breakeven_efficiency, find_crossover, find_threshold, shots_to_reach, CrossoverRecord, ShotThreshold,
    ThresholdRecord, ThresholdStatus,
};
pub use config::SweepConfig;
pub use emit::{emit_results, write_curves_csv, OutputFormat, Summary};
pub use schedule::{greedy_schedule, GateDecision, LinkChoice, LinkPlan};
pub use sweep::{compare, remote_fidelity, run_cut_sweep, run_cut_sweep_on, run_remote_sweep, CompareReport};
