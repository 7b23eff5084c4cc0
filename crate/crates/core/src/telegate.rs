//! Remote CNOT between data qubits in different modules, consuming one
//! noisy Bell pair on two communication qubits. Measurement feedforward is
//! realized by deferred measurement: classically controlled corrections
//! become controlled gates from the would-be measured qubit, which is then
//! traced out.

use crate::error::{Error, Result};
use crate::noise::{bell_density_matrix, replacement_channel, GateRole, NoiseModel, NoisyBellState, TransducerParams};
use crate::qsim::gates::{self, GateOp};
use crate::qsim::{basis_probabilities, partial_trace, Circuit, DensityMatrix, Instruction, OutcomeDistribution};

/// Largest GHZ register this module builds.
pub const MAX_GHZ_SIZE: usize = 6;

/// Qubit assignment of a star of modules around a central data qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleLayout {
    pub central: usize,
    pub peripherals: Vec<usize>,
    pub comm: [usize; 2],
}

impl ModuleLayout {
    pub fn new(central: usize, peripherals: Vec<usize>, comm: [usize; 2]) -> Result<Self> {
        if peripherals.is_empty() || peripherals.len() > 5 {
            return Err(Error::Parameter(format!("{} peripheral qubits", peripherals.len())));
        }
        let mut all: Vec<usize> = peripherals.clone();
        all.extend([central, comm[0], comm[1]]);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(Error::Targets(format!("layout indices repeat: {all:?}")));
        }
        Ok(ModuleLayout { central, peripherals, comm })
    }

    /// Data qubits 0..n with 0 central, comm qubits n and n + 1.
    pub fn ghz(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("GHZ size {n}")));
        }
        Self::new(0, (1..n).collect(), [n, n + 1])
    }

    pub fn n_data(&self) -> usize {
        self.peripherals.len() + 1
    }
}

/// One remote CNOT from `control` to `target` through comm qubits `comm`.
#[derive(Clone, Debug, PartialEq)]
pub struct RemoteGateSpec {
    pub control: usize,
    pub target: usize,
    pub comm: [usize; 2],
    pub bell_state: NoisyBellState,
    pub noise: NoiseModel,
}

impl RemoteGateSpec {
    pub fn new(control: usize, target: usize, comm: [usize; 2], bell_state: NoisyBellState, noise: NoiseModel) -> Result<Self> {
        let q = [control, target, comm[0], comm[1]];
        if (0..4).any(|i| q[i + 1..].contains(&q[i])) {
            return Err(Error::Targets(format!("remote gate qubits repeat: {q:?}")));
        }
        Ok(RemoteGateSpec { control, target, comm, bell_state, noise })
    }
}

fn push_gate(frag: &mut Vec<Instruction>, gate: GateOp, role: GateRole, noise: &NoiseModel) -> Result<()> {
    let error = noise.after_gate(role, gate.targets())?;
    frag.push(Instruction::Gate(gate));
    frag.extend(error.map(Instruction::Channel));
    Ok(())
}

/// H(q1c), CNOT(q1c→q2c), X(q1c) with the replacement channel attached to
/// the CNOT. The replacement target is (X⊗I)σ(X⊗I) so that after the final
/// X the comm pair holds σ exactly.
pub fn noisy_bell_prep(spec: &RemoteGateSpec) -> Result<Vec<Instruction>> {
    let [c1, c2] = spec.comm;
    let noise = &spec.noise;
    let mut frag = Vec::new();
    push_gate(&mut frag, GateOp::h(c1), GateRole::TelegateProtocol, noise)?;
    push_gate(&mut frag, GateOp::cnot(c1, c2)?, GateRole::TelegateProtocol, noise)?;
    let mut flipped = spec.bell_state.sigma().operator().clone();
    flipped.conjugate(&gates::x(), &[0])?;
    let target = NoisyBellState::from_state(DensityMatrix::new(flipped)?)?;
    frag.push(Instruction::Channel(replacement_channel(&target, [c1, c2])?));
    push_gate(&mut frag, GateOp::x(c1), GateRole::TelegateProtocol, noise)?;
    Ok(frag)
}

/// Full telegate: Bell prep, X frame on q1c, CNOT(q1→q1c), deferred
/// CNOT(q1c→q2c), CNOT(q2c→q2), H(q2c), deferred CZ(q2c, q1), then the comm
/// qubits are traced out. Qubits above a removed comm qubit shift down.
pub fn remote_cnot_fragment(spec: &RemoteGateSpec) -> Result<Vec<Instruction>> {
    let (q1, q2) = (spec.control, spec.target);
    let [c1, c2] = spec.comm;
    let noise = &spec.noise;
    let mut frag = noisy_bell_prep(spec)?;
    push_gate(&mut frag, GateOp::x(c1), GateRole::TelegateProtocol, noise)?;
    push_gate(&mut frag, GateOp::cnot(q1, c1)?, GateRole::TelegateLocal, noise)?;
    push_gate(&mut frag, GateOp::cnot(c1, c2)?, GateRole::TelegateProtocol, noise)?;
    push_gate(&mut frag, GateOp::cnot(c2, q2)?, GateRole::TelegateLocal, noise)?;
    push_gate(&mut frag, GateOp::h(c2), GateRole::TelegateProtocol, noise)?;
    push_gate(&mut frag, GateOp::cz(c2, q1)?, GateRole::TelegateProtocol, noise)?;
    frag.push(Instruction::TraceOut(vec![c1, c2]));
    Ok(frag)
}

/// Applies the telegate to `state`; the comm qubits must start in |00⟩ and
/// are absent from the result.
pub fn remote_cnot(state: &DensityMatrix, spec: &RemoteGateSpec) -> Result<DensityMatrix> {
    let p00 = partial_trace(state, &spec.comm)?.operator().get(0, 0).re;
    if (1.0 - p00).abs() > 1e-9 {
        return Err(Error::InvalidState(format!("comm qubits not in |00⟩ (population {p00:.3e})")));
    }
    let mut circuit = Circuit::new(state.n_qubits());
    circuit.extend(remote_cnot_fragment(spec)?)?;
    circuit.run(state)
}

/// GHZ-n preparation: H on the central qubit, then one remote CNOT to each
/// peripheral, with the comm pair allocated fresh for every gate and traced
/// out afterwards so the register never exceeds n + 2 qubits.
pub fn ghz_remote_circuit(n: usize, params: &TransducerParams, noise: &NoiseModel) -> Result<Circuit> {
    if !(2..=MAX_GHZ_SIZE).contains(&n) {
        return Err(Error::Parameter(format!("GHZ size {n} outside 2..={MAX_GHZ_SIZE}")));
    }
    let layout = ModuleLayout::ghz(n)?;
    let bell = bell_density_matrix(params)?;
    let mut circuit = Circuit::new(n);
    let mut frag = Vec::new();
    push_gate(&mut frag, GateOp::h(layout.central), GateRole::Circuit, noise)?;
    circuit.extend(frag)?;
    for &target in &layout.peripherals {
        circuit.push(Instruction::Allocate(2))?;
        let spec = RemoteGateSpec::new(layout.central, target, layout.comm, bell.clone(), *noise)?;
        circuit.extend(remote_cnot_fragment(&spec)?)?;
    }
    Ok(circuit)
}

/// Exact final state of the remote GHZ-n circuit on its n data qubits.
pub fn ghz_remote_state(n: usize, params: &TransducerParams, noise: &NoiseModel) -> Result<DensityMatrix> {
    ghz_remote_circuit(n, params, noise)?.run_from_zero()
}

/// Exact computational-basis distribution of the remote GHZ-n circuit.
pub fn build_ghz_remote(n: usize, params: &TransducerParams, noise: &NoiseModel) -> Result<OutcomeDistribution> {
    basis_probabilities(&ghz_remote_state(n, params, noise)?)
}
