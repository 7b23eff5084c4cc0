//! Hellinger fidelity, quasiprobability variance bookkeeping, shot
//! estimates and fidelity curves.

use crate::error::{Error, Result};
use crate::qsim::OutcomeDistribution;
use serde::{Deserialize, Serialize};

/// (Σ_i √(p_i q_i))², clamped to [0, 1].
pub fn hellinger_fidelity(p: &OutcomeDistribution, q: &OutcomeDistribution) -> Result<f64> {
    hellinger_fidelity_slices(p.probabilities(), q.probabilities())
}

pub fn hellinger_fidelity_slices(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Dimension(format!("distributions of length {} and {}", p.len(), q.len())));
    }
    let bc: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    Ok((bc * bc).clamp(0.0, 1.0))
}

/// Hellinger fidelity of an empirical count vector against `q`; counts
/// are normalized by their total.
pub fn hellinger_fidelity_counts(counts: &[u64], q: &OutcomeDistribution) -> Result<f64> {
    hellinger_fidelity(&OutcomeDistribution::from_counts(counts)?, q)
}

/// Σ c_i² v_i.
pub fn qpd_variance(coefficients: &[f64], variances: &[f64]) -> Result<f64> {
    if coefficients.len() != variances.len() {
        return Err(Error::Dimension(format!(
            "{} coefficients and {} variances",
            coefficients.len(),
            variances.len()
        )));
    }
    if let Some(v) = variances.iter().find(|v| !(**v >= 0.0)) {
        return Err(Error::Parameter(format!("variance {v}")));
    }
    Ok(coefficients.iter().zip(variances).map(|(c, v)| c * c * v).sum())
}

/// ⌈9^n / ε²⌉, a planning figure with the constant factor fixed at 1.
/// Ratios that are integral up to rounding error are not bumped up.
pub fn required_shots(n_cuts: u32, epsilon: f64) -> u64 {
    assert!(n_cuts >= 1, "at least one cut");
    assert!(epsilon > 0.0 && epsilon <= 1.0, "epsilon in (0, 1]");
    let x = 9f64.powi(n_cuts as i32) / (epsilon * epsilon);
    (x * (1.0 - 1e-12)).ceil() as u64
}

/// Swept parameter of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    NAdd,
    NShots,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::NAdd => "n_add",
            SweepParameter::NShots => "n_shots",
        }
    }
}

/// What the curve values are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveQuantity {
    Fidelity,
    /// dF/dx with respect to the raw parameter.
    Derivative,
}

/// Values over an ascending grid for one GHZ size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityCurve {
    pub parameter: SweepParameter,
    pub quantity: CurveQuantity,
    pub ghz_size: usize,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Standard error of each value; zero for exact points.
    pub stderr: Vec<f64>,
    /// Seeds averaged per point; zero for exact points.
    pub n_seeds: usize,
}

impl FidelityCurve {
    /// Exact fidelity curve.
    pub fn new(parameter: SweepParameter, ghz_size: usize, grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let stderr = vec![0.0; values.len()];
        Self::with_stderr(parameter, ghz_size, grid, values, stderr, 0)
    }

    /// Seed-averaged fidelity curve.
    pub fn with_stderr(
        parameter: SweepParameter,
        ghz_size: usize,
        grid: Vec<f64>,
        values: Vec<f64>,
        stderr: Vec<f64>,
        n_seeds: usize,
    ) -> Result<Self> {
        let curve = FidelityCurve { parameter, quantity: CurveQuantity::Fidelity, ghz_size, grid, values, stderr, n_seeds };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.len() != self.values.len() || self.grid.len() != self.stderr.len() {
            return Err(Error::Curve("grid, values and stderr lengths differ".into()));
        }
        if self.grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Curve("grid is not strictly ascending".into()));
        }
        if self.quantity == CurveQuantity::Fidelity && self.values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Curve("fidelity outside [0, 1]".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Linear interpolation in (ln x, F), clamped to the end values.
    pub fn interpolate_log(&self, x: f64) -> f64 {
        let g = &self.grid;
        if x <= g[0] {
            return self.values[0];
        }
        if x >= g[g.len() - 1] {
            return self.values[g.len() - 1];
        }
        let i = g.partition_point(|&v| v <= x) - 1;
        if g[i] == x {
            return self.values[i];
        }
        let t = (x.ln() - g[i].ln()) / (g[i + 1].ln() - g[i].ln());
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }
}

/// Central differences inside, one-sided differences at the two ends, all
/// with respect to the raw parameter.
pub fn finite_difference_derivative(curve: &FidelityCurve) -> Result<FidelityCurve> {
    let (x, f) = (&curve.grid, &curve.values);
    let m = x.len();
    if m < 2 {
        return Err(Error::Curve("derivative needs at least two points".into()));
    }
    if x.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Curve("duplicate grid points".into()));
    }
    let d = (0..m)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(m - 1));
            (f[b] - f[a]) / (x[b] - x[a])
        })
        .collect::<Vec<f64>>();
    let out = FidelityCurve {
        parameter: curve.parameter,
        quantity: CurveQuantity::Derivative,
        ghz_size: curve.ghz_size,
        grid: x.clone(),
        values: d,
        stderr: vec![0.0; m],
        n_seeds: curve.n_seeds,
    };
    out.validate()?;
    Ok(out)
}
