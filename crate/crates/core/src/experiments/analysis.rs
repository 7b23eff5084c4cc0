use crate::metrics::FidelityCurve;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdStatus {
    InRange,
    /// The cut fidelity exceeds every remote value on the grid.
    AboveRange,
    /// The cut fidelity is below every remote value on the grid.
    BelowRange,
    /// Several distinct crossings; the first is reported as the threshold.
    Ambiguous,
}

/// N_add at which the remote arm matches the cut arm at one shot budget.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub ghz_size: usize,
    pub n_shots: u64,
    pub cut_fidelity: f64,
    pub n_add_threshold: Option<f64>,
    pub status: ThresholdStatus,
    pub crossings: Vec<f64>,
}

/// Solves F_remote(N_add) = `cut_fidelity` by linear interpolation in
/// (ln N_add, F). Never extrapolates past the grid.
pub fn find_threshold(remote: &FidelityCurve, cut_fidelity: f64, n_shots: u64) -> ThresholdRecord {
    let (x, f) = (&remote.grid, &remote.values);
    let c = cut_fidelity;
    let mut crossings: Vec<f64> = Vec::new();
    let mut add = |v: f64| {
        if crossings.last().is_none_or(|&l| (l - v).abs() > 1e-12 * v.abs()) {
            crossings.push(v);
        }
    };
    for i in 0..x.len() {
        if f[i] == c {
            add(x[i]);
        } else if i + 1 < x.len() && (f[i] - c) * (f[i + 1] - c) < 0.0 {
            let t = (c - f[i]) / (f[i + 1] - f[i]);
            add((x[i].ln() + t * (x[i + 1].ln() - x[i].ln())).exp());
        }
    }
    let max = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let status = match crossings.len() {
        0 if c > max => ThresholdStatus::AboveRange,
        0 => ThresholdStatus::BelowRange,
        1 => ThresholdStatus::InRange,
        _ => ThresholdStatus::Ambiguous,
    };
    ThresholdRecord {
        ghz_size: remote.ghz_size,
        n_shots,
        cut_fidelity,
        n_add_threshold: crossings.first().copied(),
        status,
        crossings,
    }
}

/// Shot budget at which the cut arm overtakes the remote arm's plateau.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverRecord {
    pub ghz_size: usize,
    /// Best remote fidelity for N_add at or below the plateau limit.
    pub plateau_fidelity: f64,
    /// Smallest grid N_shots whose cut fidelity exceeds the plateau; `None`
    /// when no grid point does.
    pub n_shots: Option<u64>,
}

/// Crossover per GHZ size present in both curve sets.
pub fn find_crossover(remote: &[FidelityCurve], cut: &[FidelityCurve], plateau_max_n_add: f64) -> Vec<CrossoverRecord> {
    remote
        .iter()
        .filter_map(|r| {
            let c = cut.iter().find(|c| c.ghz_size == r.ghz_size)?;
            let plateau = r
                .grid
                .iter()
                .zip(&r.values)
                .filter(|(x, _)| **x <= plateau_max_n_add)
                .map(|(_, v)| *v)
                .fold(f64::NEG_INFINITY, f64::max);
            let plateau = if plateau.is_finite() { plateau } else { r.values[0] };
            let n_shots = c.grid.iter().zip(&c.values).find(|(_, v)| **v > plateau).map(|(x, _)| *x as u64);
            Some(CrossoverRecord { ghz_size: r.ghz_size, plateau_fidelity: plateau, n_shots })
        })
        .collect()
}

/// Shots the cut arm needs to reach a target fidelity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShotThreshold {
    pub ghz_size: usize,
    pub fidelity: f64,
    pub n_shots: Option<f64>,
}

/// First N_shots where the curve reaches `target`, interpolated in
/// (ln N_shots, F) from the preceding grid point.
pub fn shots_to_reach(cut: &FidelityCurve, target: f64) -> Option<f64> {
    let i = cut.values.iter().position(|&v| v >= target)?;
    if i == 0 {
        return Some(cut.grid[0]);
    }
    let (x0, x1) = (cut.grid[i - 1].ln(), cut.grid[i].ln());
    let (f0, f1) = (cut.values[i - 1], cut.values[i]);
    Some((x0 + (target - f0) / (f1 - f0) * (x1 - x0)).exp())
}

/// Efficiency at which N cut CNOTs (cost 9^N) and N remote gates (heralding
/// rate ∝ η² per gate) break even: 9^N = η^(−2N), so η = 1/3 for every N.
pub fn breakeven_efficiency(n_gates: u32) -> f64 {
    assert!(n_gates >= 1, "at least one gate");
    let n = n_gates as f64;
    9f64.powf(-n / (2.0 * n))
}
