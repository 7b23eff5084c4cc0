use super::analysis::{find_crossover, find_threshold, shots_to_reach, CrossoverRecord, ShotThreshold, ThresholdRecord};
use super::SweepConfig;
use crate::cutting::{cnot_decomposition, sample_cut_estimate_with, stratified_cut_estimate, CutAllocation, CutTable, QpdSampler};
use crate::error::Result;
use crate::metrics::{hellinger_fidelity, hellinger_fidelity_counts, FidelityCurve, SweepParameter};
use crate::noise::{NoiseModel, TransducerParams};
use crate::qsim::{derive_seed, sample_counts, OutcomeDistribution};
use crate::telegate::build_ghz_remote;
use rayon::prelude::*;

/// Seed-path tags keeping the two arms on disjoint streams.
const REMOTE_STREAM: u64 = 1;
const CUT_STREAM: u64 = 2;

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

/// Exact Hellinger fidelity of the remote GHZ-n circuit against ideal GHZ.
pub fn remote_fidelity(n: usize, params: &TransducerParams, noise: &NoiseModel) -> Result<f64> {
    hellinger_fidelity(&build_ghz_remote(n, params, noise)?, &OutcomeDistribution::ghz(n))
}

/// Remote-arm fidelity against N_add for every configured size. Exact by
/// default; with `remote_shots > 0` each point averages `repetitions`
/// sampled empirical distributions.
pub fn run_remote_sweep(cfg: &SweepConfig) -> Result<Vec<FidelityCurve>> {
    cfg.validate()?;
    let grid = cfg.n_add_values();
    let noise = cfg.noise_model();
    cfg.ghz_sizes
        .iter()
        .map(|&n| {
            let ideal = OutcomeDistribution::ghz(n);
            let points: Vec<(f64, f64)> = grid
                .par_iter()
                .enumerate()
                .map(|(idx, &x)| -> Result<(f64, f64)> {
                    let dist = build_ghz_remote(n, &cfg.transducer(x), &noise)?;
                    if cfg.remote_shots == 0 {
                        return Ok((hellinger_fidelity(&dist, &ideal)?, 0.0));
                    }
                    let fs = (0..cfg.repetitions)
                        .map(|rep| {
                            let seed = derive_seed(cfg.seed, &[REMOTE_STREAM, n as u64, idx as u64, rep as u64]);
                            hellinger_fidelity_counts(&sample_counts(&dist, cfg.remote_shots, seed), &ideal)
                        })
                        .collect::<Result<Vec<f64>>>()?;
                    Ok(mean_and_stderr(&fs))
                })
                .collect::<Result<_>>()?;
            let seeds = if cfg.remote_shots == 0 { 0 } else { cfg.repetitions };
            FidelityCurve::with_stderr(
                SweepParameter::NAdd,
                n,
                grid.clone(),
                points.iter().map(|p| p.0).collect(),
                points.iter().map(|p| p.1).collect(),
                seeds,
            )
        })
        .collect()
}

/// Cut-arm fidelity against N_shots on an explicit grid.
pub fn run_cut_sweep_on(cfg: &SweepConfig, shots: &[u64]) -> Result<Vec<FidelityCurve>> {
    cfg.validate()?;
    let noise = cfg.noise_model();
    let sampler = QpdSampler::new(cnot_decomposition());
    cfg.ghz_sizes
        .iter()
        .map(|&n| {
            let ideal = OutcomeDistribution::ghz(n);
            let table = CutTable::new(n, &sampler, &noise)?;
            let groups = match cfg.cut_allocation {
                CutAllocation::Stratified => table.grouped_all(),
                CutAllocation::Sampled => Vec::new(),
            };
            let tasks: Vec<(usize, usize)> =
                (0..shots.len()).flat_map(|i| (0..cfg.repetitions).map(move |r| (i, r))).collect();
            let fidelities: Vec<f64> = tasks
                .par_iter()
                .map(|&(idx, rep)| {
                    let seed = derive_seed(cfg.seed, &[CUT_STREAM, n as u64, idx as u64, rep as u64]);
                    let result = match cfg.cut_allocation {
                        CutAllocation::Stratified => stratified_cut_estimate(&groups, shots[idx], seed)?,
                        CutAllocation::Sampled => sample_cut_estimate_with(&table, shots[idx], seed)?,
                    };
                    hellinger_fidelity(&result.distribution(), &ideal)
                })
                .collect::<Result<_>>()?;
            let stats: Vec<(f64, f64)> =
                fidelities.chunks(cfg.repetitions).map(mean_and_stderr).collect();
            FidelityCurve::with_stderr(
                SweepParameter::NShots,
                n,
                shots.iter().map(|&s| s as f64).collect(),
                stats.iter().map(|p| p.0).collect(),
                stats.iter().map(|p| p.1).collect(),
                cfg.repetitions,
            )
        })
        .collect()
}

/// Cut-arm fidelity against the configured N_shots grid.
pub fn run_cut_sweep(cfg: &SweepConfig) -> Result<Vec<FidelityCurve>> {
    run_cut_sweep_on(cfg, &cfg.n_shots_values())
}

/// Both arms plus everything derived from comparing them.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub remote: Vec<FidelityCurve>,
    pub cut: Vec<FidelityCurve>,
    pub thresholds: Vec<ThresholdRecord>,
    pub crossovers: Vec<CrossoverRecord>,
    pub shot_thresholds: Vec<ShotThreshold>,
}

/// Runs both sweeps. The cut grid is extended by the threshold budgets so
/// the cut fidelity at each budget is measured, not interpolated.
pub fn compare(cfg: &SweepConfig) -> Result<CompareReport> {
    let remote = run_remote_sweep(cfg)?;
    let mut shots = cfg.n_shots_values();
    shots.extend(&cfg.threshold_budgets);
    shots.sort_unstable();
    shots.dedup();
    let cut = run_cut_sweep_on(cfg, &shots)?;
    let mut thresholds = Vec::new();
    for (r, c) in remote.iter().zip(&cut) {
        for &budget in &cfg.threshold_budgets {
            thresholds.push(find_threshold(r, c.interpolate_log(budget as f64), budget));
        }
    }
    let crossovers = find_crossover(&remote, &cut, cfg.plateau_max_n_add);
    let shot_thresholds = cut
        .iter()
        .map(|c| ShotThreshold { ghz_size: c.ghz_size, fidelity: cfg.target_fidelity, n_shots: shots_to_reach(c, cfg.target_fidelity) })
        .collect();
    Ok(CompareReport { remote, cut, thresholds, crossovers, shot_thresholds })
}
