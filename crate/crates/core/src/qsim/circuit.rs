use super::operator::check_targets;
use super::{apply_gate, apply_kraus, partial_trace, DensityMatrix, GateOp, KrausChannel};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Instruction {
    Gate(GateOp),
    Channel(KrausChannel),
    /// Traces out the listed qubits; the survivors are renumbered in order.
    TraceOut(Vec<usize>),
    /// Appends this many fresh |0⟩ qubits after the existing ones.
    Allocate(usize),
}

impl Instruction {
    fn targets(&self) -> &[usize] {
        match self {
            Instruction::Gate(g) => g.targets(),
            Instruction::Channel(c) => c.targets(),
            Instruction::TraceOut(q) => q,
            Instruction::Allocate(_) => &[],
        }
    }
}

/// An instruction list whose addressing is checked against the running
/// register width as instructions are pushed.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    width: usize,
    peak_width: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, width: n_qubits, peak_width: n_qubits, instructions: Vec::new() }
    }

    /// Register width at the start.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Register width after the last instruction.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Largest width reached at any point.
    pub fn peak_width(&self) -> usize {
        self.peak_width
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn push(&mut self, ins: Instruction) -> Result<()> {
        match &ins {
            Instruction::Allocate(k) => self.width += k,
            Instruction::TraceOut(qs) => {
                check_targets(self.width, qs)?;
                if qs.len() >= self.width {
                    return Err(Error::Targets("trace-out would empty the register".into()));
                }
                self.width -= qs.len();
            }
            other => check_targets(self.width, other.targets())?,
        }
        self.peak_width = self.peak_width.max(self.width);
        self.instructions.push(ins);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Instruction>>(&mut self, fragment: I) -> Result<()> {
        fragment.into_iter().try_for_each(|ins| self.push(ins))
    }

    pub fn gate(&mut self, gate: GateOp) -> Result<()> {
        self.push(Instruction::Gate(gate))
    }

    pub fn channel(&mut self, channel: KrausChannel) -> Result<()> {
        self.push(Instruction::Channel(channel))
    }

    pub fn run(&self, state: &DensityMatrix) -> Result<DensityMatrix> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "{}-qubit state into a {}-qubit circuit",
                state.n_qubits(),
                self.n_qubits
            )));
        }
        let mut rho = state.clone();
        for ins in &self.instructions {
            rho = match ins {
                Instruction::Gate(g) => apply_gate(&rho, g)?,
                Instruction::Channel(c) => apply_kraus(&rho, c)?,
                Instruction::TraceOut(qs) => {
                    let keep: Vec<usize> = (0..rho.n_qubits()).filter(|q| !qs.contains(q)).collect();
                    partial_trace(&rho, &keep)?
                }
                Instruction::Allocate(k) => rho.with_zero_qubits(*k),
            };
        }
        Ok(rho)
    }

    pub fn run_from_zero(&self) -> Result<DensityMatrix> {
        self.run(&DensityMatrix::zero_state(self.n_qubits))
    }
}
