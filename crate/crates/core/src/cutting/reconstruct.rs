use crate::error::{Error, Result};
use crate::qsim::{walsh_hadamard, OutcomeDistribution};

/// Z-string expectations and the distribution reconstructed from them.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionResult {
    /// E_s for every Z-string s in binary order.
    pub expectations: Vec<f64>,
    /// Clamped and renormalized probabilities.
    pub probabilities: Vec<f64>,
    /// Integer counts from `probabilities`, summing to the requested total.
    pub counts: Vec<u64>,
    pub shots_per_subexperiment: u64,
}

impl ReconstructionResult {
    pub fn distribution(&self) -> OutcomeDistribution {
        let n = self.probabilities.len().trailing_zeros() as usize;
        OutcomeDistribution::new(n, self.probabilities.clone()).expect("clamped and renormalized")
    }
}

/// p_x = 2^{−n} Σ_s (−1)^{popcount(x & s)} E_s, so that E = (1, …, 1) maps
/// to the all-zeros outcome.
pub fn raw_probabilities(expectations: &[f64]) -> Result<Vec<f64>> {
    if expectations.is_empty() || !expectations.len().is_power_of_two() {
        return Err(Error::Dimension(format!("{} expectation values", expectations.len())));
    }
    let mut p = expectations.to_vec();
    walsh_hadamard(&mut p);
    let scale = 1.0 / p.len() as f64;
    p.iter_mut().for_each(|x| *x *= scale);
    Ok(p)
}

/// Rounds `total · p` to integers summing to `total`: floors first, then
/// one extra count to the largest fractional parts, ties to lower index.
pub fn largest_remainder(p: &[f64], total: u64) -> Vec<u64> {
    let scaled: Vec<f64> = p.iter().map(|x| x * total as f64).collect();
    let mut counts: Vec<u64> = scaled.iter().map(|x| x.floor() as u64).collect();
    let assigned: u64 = counts.iter().sum();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| (scaled[b] - scaled[b].floor()).total_cmp(&(scaled[a] - scaled[a].floor())).then(a.cmp(&b)));
    for &i in order.iter().take(total.saturating_sub(assigned) as usize) {
        counts[i] += 1;
    }
    counts
}

/// Walsh–Hadamard reconstruction followed by clamp-to-zero and
/// renormalization. If nothing positive survives the clamp the result is
/// uniform.
pub fn reconstruct_distribution(expectations: &[f64], total: u64) -> Result<ReconstructionResult> {
    let mut p = raw_probabilities(expectations)?;
    p.iter_mut().for_each(|x| *x = x.max(0.0));
    let sum: f64 = p.iter().sum();
    if sum > 0.0 {
        p.iter_mut().for_each(|x| *x /= sum);
    } else {
        let u = 1.0 / p.len() as f64;
        p.iter_mut().for_each(|x| *x = u);
    }
    let counts = largest_remainder(&p, total);
    Ok(ReconstructionResult { expectations: expectations.to_vec(), probabilities: p, counts, shots_per_subexperiment: total })
}
