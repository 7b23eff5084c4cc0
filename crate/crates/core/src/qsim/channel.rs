use super::operator::check_targets;
use super::Matrix;
use crate::error::{Error, Result};

/// Completeness residual above which construction fails.
const COMPLETENESS_REJECT: f64 = 1e-6;

/// A CPTP map given by Kraus operators on an ordered list of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    operators: Vec<Matrix>,
    targets: Vec<usize>,
}

impl KrausChannel {
    pub fn new(operators: Vec<Matrix>, targets: Vec<usize>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::Dimension("empty Kraus set".into()));
        }
        check_targets(usize::MAX >> 1, &targets)?;
        let d = 1usize << targets.len();
        if let Some(bad) = operators.iter().find(|k| k.nrows() != d || k.ncols() != d) {
            return Err(Error::Dimension(format!(
                "{}x{} Kraus operator on {} targets",
                bad.nrows(),
                bad.ncols(),
                targets.len()
            )));
        }
        let ch = KrausChannel { operators, targets };
        let residual = ch.completeness_residual();
        if residual > COMPLETENESS_REJECT {
            return Err(Error::Incomplete(residual));
        }
        Ok(ch)
    }

    /// Largest elementwise deviation of Σ K†K from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.operators[0].nrows();
        let sum = self.operators.iter().fold(Matrix::zeros(d, d), |acc, k| acc + k.adjoint() * k);
        (sum - Matrix::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Same operators acting on different qubits.
    pub fn on(&self, targets: Vec<usize>) -> Result<Self> {
        if targets.len() != self.targets.len() {
            return Err(Error::Targets(format!(
                "{} targets for a {}-qubit channel",
                targets.len(),
                self.targets.len()
            )));
        }
        check_targets(usize::MAX >> 1, &targets)?;
        Ok(KrausChannel { operators: self.operators.clone(), targets })
    }
}
