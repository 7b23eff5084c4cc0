use crate::error::{Error, Result};
use crate::qsim::gates::pauli_strings;
use crate::qsim::{KrausChannel, C64};
use serde::{Deserialize, Serialize};

/// How a quoted gate fidelity F maps to the Pauli error probability p of
/// the channel {√(1−p)·I} ∪ {√(p/(4^k−1))·P}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FidelityConvention {
    /// F is the process (entanglement) fidelity: p = 1 − F.
    #[default]
    Process,
    /// F is the average gate fidelity: p = (1 − F)(d + 1)/d.
    Average,
    /// 1 − F is the weight λ of ρ ↦ (1 − λ)ρ + λ·I/d: p = λ(d² − 1)/d².
    DepolarizingParameter,
}

/// Local depolarizing error attached to a k-qubit gate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepolarizingSpec {
    pub n_qubits: usize,
    pub gate_fidelity: f64,
}

impl DepolarizingSpec {
    pub fn new(n_qubits: usize, gate_fidelity: f64) -> Result<Self> {
        let spec = DepolarizingSpec { n_qubits, gate_fidelity };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.n_qubits) {
            return Err(Error::Parameter(format!("{}-qubit depolarizing spec", self.n_qubits)));
        }
        if !(self.gate_fidelity > 0.0 && self.gate_fidelity <= 1.0) {
            return Err(Error::Parameter(format!("gate fidelity {} outside (0, 1]", self.gate_fidelity)));
        }
        Ok(())
    }

    pub fn is_ideal(&self) -> bool {
        self.gate_fidelity == 1.0
    }
}

/// Total probability of a non-identity Pauli error under `convention`.
pub fn pauli_error_probability(spec: &DepolarizingSpec, convention: FidelityConvention) -> Result<f64> {
    spec.validate()?;
    let d = (1u32 << spec.n_qubits) as f64;
    let infidelity = 1.0 - spec.gate_fidelity;
    let p = match convention {
        FidelityConvention::Process => infidelity,
        FidelityConvention::Average => infidelity * (d + 1.0) / d,
        FidelityConvention::DepolarizingParameter => infidelity * (d * d - 1.0) / (d * d),
    };
    if p > 1.0 {
        return Err(Error::Parameter(format!(
            "gate fidelity {} has no depolarizing channel under {convention:?}",
            spec.gate_fidelity
        )));
    }
    Ok(p)
}

pub fn depolarizing_channel(
    spec: &DepolarizingSpec,
    convention: FidelityConvention,
    targets: Vec<usize>,
) -> Result<KrausChannel> {
    if targets.len() != spec.n_qubits {
        return Err(Error::Targets(format!(
            "{} targets for a {}-qubit channel",
            targets.len(),
            spec.n_qubits
        )));
    }
    let p = pauli_error_probability(spec, convention)?;
    let strings = pauli_strings(spec.n_qubits);
    let n_err = (strings.len() - 1) as f64;
    let ops = strings
        .into_iter()
        .enumerate()
        .filter_map(|(i, m)| {
            let w = if i == 0 { 1.0 - p } else { p / n_err };
            (w > 0.0).then(|| m * C64::new(w.sqrt(), 0.0))
        })
        .collect();
    KrausChannel::new(ops, targets)
}
