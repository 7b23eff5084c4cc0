use super::rng::rng_from_seed;
use crate::error::{Error, Result};
use rand_distr::{Binomial, Distribution};

const SUM_TOL: f64 = 1e-9;

/// Probabilities over bitstrings of `n_bits`, indexed in binary order.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    n_bits: usize,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(n_bits: usize, probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.len() != 1usize << n_bits {
            return Err(Error::Dimension(format!(
                "{} probabilities for {n_bits} bits",
                probabilities.len()
            )));
        }
        if let Some(bad) = probabilities.iter().find(|p| !(**p >= 0.0)) {
            return Err(Error::InvalidState(format!("probability {bad}")));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidState(format!("probabilities sum to {sum}")));
        }
        Ok(OutcomeDistribution { n_bits, probabilities })
    }

    /// Empirical distribution of a count vector.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 || !counts.len().is_power_of_two() {
            return Err(Error::Dimension(format!("{} bins with {total} counts", counts.len())));
        }
        let n_bits = counts.len().trailing_zeros() as usize;
        Self::new(n_bits, counts.iter().map(|&c| c as f64 / total as f64).collect())
    }

    /// Ideal n-qubit GHZ distribution: ½ on all-zeros and all-ones.
    pub fn ghz(n: usize) -> Self {
        let mut p = vec![0.0; 1 << n];
        p[0] = 0.5;
        p[(1 << n) - 1] = 0.5;
        OutcomeDistribution { n_bits: n, probabilities: p }
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// Multinomial sample of `shots` outcomes, drawn as a chain of conditional
/// binomials so the result is exact for any bin count.
pub fn sample_counts(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Vec<u64> {
    assert!(shots >= 1, "shots must be positive");
    let mut rng = rng_from_seed(seed);
    let p = dist.probabilities();
    let mut counts = vec![0u64; p.len()];
    let mut remaining = shots;
    let mut mass = 1.0f64;
    for (i, &pi) in p.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i + 1 == p.len() {
            counts[i] = remaining;
            break;
        }
        let q = if pi >= mass - 1e-15 { 1.0 } else { (pi / mass).clamp(0.0, 1.0) };
        let k = Binomial::new(remaining, q).expect("q in [0, 1]").sample(&mut rng);
        counts[i] = k;
        remaining -= k;
        mass -= pi;
    }
    counts
}
