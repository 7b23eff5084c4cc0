use super::{depolarizing_channel, DepolarizingSpec, FidelityConvention};
use crate::error::Result;
use crate::qsim::KrausChannel;
use serde::{Deserialize, Serialize};

/// What an operation is, for deciding whether it carries gate error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateRole {
    /// A gate of the logical circuit itself, such as H on the central qubit.
    Circuit,
    /// Data–communication entangling gate of a telegate.
    TelegateLocal,
    /// Bell preparation, Pauli frame, measurement basis change and deferred
    /// feedforward inside a telegate.
    TelegateProtocol,
    /// Operation inserted by a cut: direct Paulis, ancilla preparation,
    /// controlled operators and ancilla basis rotations.
    QpdInserted,
}

/// Which operations are charged with local depolarizing error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoisePlacement {
    /// Circuit gates and the telegate's data–comm CNOTs only.
    #[default]
    LocalGates,
    /// Every non-identity gate, whatever its role.
    Exhaustive,
}

impl NoisePlacement {
    pub fn charges(self, role: GateRole) -> bool {
        match self {
            NoisePlacement::Exhaustive => true,
            NoisePlacement::LocalGates => matches!(role, GateRole::Circuit | GateRole::TelegateLocal),
        }
    }
}

/// Local gate-error configuration shared by both arms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub one_qubit: DepolarizingSpec,
    pub two_qubit: DepolarizingSpec,
    pub convention: FidelityConvention,
    pub placement: NoisePlacement,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            one_qubit: DepolarizingSpec { n_qubits: 1, gate_fidelity: 0.99 },
            two_qubit: DepolarizingSpec { n_qubits: 2, gate_fidelity: 0.98 },
            convention: FidelityConvention::default(),
            placement: NoisePlacement::default(),
        }
    }
}

impl NoiseModel {
    pub fn ideal() -> Self {
        NoiseModel {
            one_qubit: DepolarizingSpec { n_qubits: 1, gate_fidelity: 1.0 },
            two_qubit: DepolarizingSpec { n_qubits: 2, gate_fidelity: 1.0 },
            ..Self::default()
        }
    }

    pub fn with_placement(self, placement: NoisePlacement) -> Self {
        NoiseModel { placement, ..self }
    }

    pub fn with_convention(self, convention: FidelityConvention) -> Self {
        NoiseModel { convention, ..self }
    }

    pub fn is_ideal(&self) -> bool {
        self.one_qubit.is_ideal() && self.two_qubit.is_ideal()
    }

    pub fn validate(&self) -> Result<()> {
        for spec in [&self.one_qubit, &self.two_qubit] {
            spec.validate()?;
            super::pauli_error_probability(spec, self.convention)?;
        }
        Ok(())
    }

    /// Error channel following a gate of `role` on `targets`, if any.
    pub fn after_gate(&self, role: GateRole, targets: &[usize]) -> Result<Option<KrausChannel>> {
        let spec = match targets.len() {
            1 => &self.one_qubit,
            _ => &self.two_qubit,
        };
        if !self.placement.charges(role) || spec.is_ideal() {
            return Ok(None);
        }
        depolarizing_channel(spec, self.convention, targets.to_vec()).map(Some)
    }
}
