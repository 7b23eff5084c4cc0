use crate::cutting::CutAllocation;
use crate::error::{Error, Result};
use crate::noise::{DepolarizingSpec, FidelityConvention, NoiseModel, NoisePlacement, TransducerParams};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Sweep configuration. Read from flat TOML; unknown keys are rejected and
/// missing keys take the defaults below.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub ghz_sizes: Vec<usize>,
    pub n_add_min: f64,
    pub n_add_max: f64,
    pub n_add_points: usize,
    /// Explicit N_add grid; overrides the log-spaced one.
    pub n_add_grid: Option<Vec<f64>>,
    pub n_shots_min: u64,
    pub n_shots_max: u64,
    pub n_shots_points: usize,
    /// Explicit N_shots grid; overrides the log-spaced one.
    pub n_shots_grid: Option<Vec<u64>>,
    pub eta: f64,
    pub bandwidth_hz: f64,
    pub op_time_s: f64,
    pub p_e: f64,
    pub gate_fidelity_1q: f64,
    pub gate_fidelity_2q: f64,
    pub fidelity_convention: FidelityConvention,
    pub noise_placement: NoisePlacement,
    pub cut_allocation: CutAllocation,
    pub seed: u64,
    /// Seeds averaged per stochastic grid point.
    pub repetitions: usize,
    /// Shots for the remote arm; 0 uses the exact distribution.
    pub remote_shots: u64,
    /// Shot budgets at which N_add thresholds are extracted.
    pub threshold_budgets: Vec<u64>,
    /// Largest N_add counted as the local-noise plateau of the remote arm.
    pub plateau_max_n_add: f64,
    /// Fidelity whose shot requirement is reported for the cut arm.
    pub target_fidelity: f64,
    /// Marker range of current transducer noise, echoed as metadata only.
    pub state_of_the_art_n_add: [f64; 2],
}

impl Default for SweepConfig {
    fn default() -> Self {
        let t = TransducerParams::default();
        SweepConfig {
            ghz_sizes: vec![2, 3, 4, 5],
            n_add_min: 1e-4,
            n_add_max: 1.0,
            n_add_points: 30,
            n_add_grid: None,
            n_shots_min: 10,
            n_shots_max: 10_000,
            n_shots_points: 31,
            n_shots_grid: None,
            eta: t.eta,
            bandwidth_hz: t.bandwidth_hz,
            op_time_s: t.op_time_s,
            p_e: t.p_e,
            gate_fidelity_1q: 0.99,
            gate_fidelity_2q: 0.98,
            fidelity_convention: FidelityConvention::default(),
            noise_placement: NoisePlacement::default(),
            cut_allocation: CutAllocation::default(),
            seed: 20_240_901,
            repetitions: 20,
            remote_shots: 0,
            threshold_budgets: vec![20, 200, 500, 1000],
            plateau_max_n_add: 1e-3,
            target_fidelity: 0.9,
            state_of_the_art_n_add: [0.12, 0.14],
        }
    }
}

fn log_space(min: f64, max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    let (a, b) = (min.ln(), max.ln());
    (0..points).map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp()).collect()
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn n_add_values(&self) -> Vec<f64> {
        match &self.n_add_grid {
            Some(g) => g.clone(),
            None => log_space(self.n_add_min, self.n_add_max, self.n_add_points),
        }
    }

    /// Rounded log-spaced integers with duplicates removed.
    pub fn n_shots_values(&self) -> Vec<u64> {
        match &self.n_shots_grid {
            Some(g) => g.clone(),
            None => {
                let mut v: Vec<u64> = log_space(self.n_shots_min as f64, self.n_shots_max as f64, self.n_shots_points)
                    .into_iter()
                    .map(|x| x.round() as u64)
                    .collect();
                v.dedup();
                v
            }
        }
    }

    pub fn transducer(&self, n_add: f64) -> TransducerParams {
        TransducerParams { n_add, eta: self.eta, bandwidth_hz: self.bandwidth_hz, op_time_s: self.op_time_s, p_e: self.p_e }
    }

    pub fn noise_model(&self) -> NoiseModel {
        NoiseModel {
            one_qubit: DepolarizingSpec { n_qubits: 1, gate_fidelity: self.gate_fidelity_1q },
            two_qubit: DepolarizingSpec { n_qubits: 2, gate_fidelity: self.gate_fidelity_2q },
            convention: self.fidelity_convention,
            placement: self.noise_placement,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.into()));
        if self.ghz_sizes.is_empty() || self.ghz_sizes.iter().any(|n| !(2..=5).contains(n)) {
            return bad("ghz_sizes must be a nonempty subset of 2..=5");
        }
        let n_add = self.n_add_values();
        if n_add.is_empty() || n_add.iter().any(|x| !(*x > 0.0)) || n_add.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("N_add grid must be nonempty, positive and strictly ascending");
        }
        let shots = self.n_shots_values();
        if shots.is_empty() || shots[0] == 0 || shots.windows(2).any(|w| w[0] >= w[1]) {
            return bad("N_shots grid must be nonempty, positive and strictly ascending");
        }
        if self.repetitions == 0 {
            return bad("repetitions must be positive");
        }
        if self.threshold_budgets.contains(&0) {
            return bad("threshold budgets must be positive");
        }
        self.transducer(n_add[0]).validate().map_err(|e| Error::Config(e.to_string()))?;
        self.noise_model().validate().map_err(|e| Error::Config(e.to_string()))
    }
}
