use super::{QpdOutcome, QpdSampler};
use crate::error::{Error, Result};
use crate::noise::{GateRole, NoiseModel};
use crate::qsim::gates::{self, controlled};
use crate::qsim::{rng_from_seed, KrausChannel, Matrix, Operator};
use rand::Rng;

#[derive(Clone, Debug)]
enum Step {
    Apply(Matrix, Vec<usize>),
    Noise(KrausChannel),
    Allocate(usize),
    /// Z-basis readout of the listed qubits, which are then discarded.
    Readout(Vec<usize>),
}

/// One cut circuit: the GHZ-n circuit with every CNOT replaced by the
/// selected outcome of its decomposition. Ancillas for off-diagonal outcomes
/// are allocated per cut and read out before the next cut, so the register
/// holds at most n + 2 qubits.
#[derive(Clone, Debug)]
pub struct SubExperiment {
    n_data: usize,
    selection: Vec<QpdOutcome>,
    steps: Vec<Step>,
    peak_width: usize,
}

/// Result of one simulated shot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShotRecord {
    /// Product of the ±1 ancilla eigenvalues.
    pub ancilla_sign: f64,
    /// Data-qubit bitstring in binary order.
    pub bitstring: usize,
}

impl ShotRecord {
    /// Ancilla sign times the eigenvalue of the Z-string `s` on the data.
    pub fn value(&self, s: usize) -> f64 {
        let parity = (self.bitstring & s).count_ones() & 1;
        self.ancilla_sign * if parity == 1 { -1.0 } else { 1.0 }
    }
}

fn is_identity(m: &Matrix) -> bool {
    let d = m.nrows();
    (m - Matrix::identity(d, d)).iter().all(|z| z.norm() < 1e-15)
}

/// Basis change before a Z readout: H for the X basis, H·S† for Y.
pub(crate) fn readout_rotation(k: usize) -> Matrix {
    if k == 0 {
        gates::h()
    } else {
        gates::h() * gates::sdg()
    }
}

struct Builder<'a> {
    steps: Vec<Step>,
    width: usize,
    peak: usize,
    noise: &'a NoiseModel,
}

impl Builder<'_> {
    fn gate(&mut self, m: Matrix, targets: Vec<usize>, role: GateRole) -> Result<()> {
        if is_identity(&m) {
            return Ok(());
        }
        let error = self.noise.after_gate(role, &targets)?;
        self.steps.push(Step::Apply(m, targets));
        self.steps.extend(error.map(Step::Noise));
        Ok(())
    }
}

impl SubExperiment {
    /// Assembles the cut GHZ-n circuit for one outcome per CNOT.
    pub fn new(n_data: usize, selection: Vec<QpdOutcome>, sampler: &QpdSampler, noise: &NoiseModel) -> Result<Self> {
        if n_data < 2 || selection.len() != n_data - 1 {
            return Err(Error::Parameter(format!("{} outcomes for GHZ size {n_data}", selection.len())));
        }
        let terms = &sampler.decomposition().terms;
        let mut b = Builder { steps: Vec::new(), width: n_data, peak: n_data, noise };
        b.gate(gates::h(), vec![0], GateRole::Circuit)?;
        for (cut, o) in selection.iter().enumerate() {
            let target = cut + 1;
            let (ti, tj) = (&terms[o.i], &terms[o.j]);
            if o.is_diagonal() {
                b.gate(ti.a.clone(), vec![0], GateRole::QpdInserted)?;
                b.gate(ti.b.clone(), vec![target], GateRole::QpdInserted)?;
                continue;
            }
            let (a1, a2) = (b.width, b.width + 1);
            b.steps.push(Step::Allocate(2));
            b.width += 2;
            b.peak = b.peak.max(b.width);
            for a in [a1, a2] {
                b.gate(gates::h(), vec![a], GateRole::QpdInserted)?;
            }
            b.gate(controlled(&ti.a, &tj.a), vec![a1, 0], GateRole::QpdInserted)?;
            b.gate(controlled(&ti.b, &tj.b), vec![a2, target], GateRole::QpdInserted)?;
            for a in [a1, a2] {
                b.gate(readout_rotation(o.k), vec![a], GateRole::QpdInserted)?;
            }
            b.steps.push(Step::Readout(vec![a1, a2]));
            b.width -= 2;
        }
        Ok(SubExperiment { n_data, selection, steps: b.steps, peak_width: b.peak })
    }

    pub fn n_data(&self) -> usize {
        self.n_data
    }

    pub fn selection(&self) -> &[QpdOutcome] {
        &self.selection
    }

    pub fn peak_width(&self) -> usize {
        self.peak_width
    }

    /// Number of ancilla qubits used over the whole circuit.
    pub fn ancilla_count(&self) -> usize {
        self.selection.iter().filter(|o| !o.is_diagonal()).count() * 2
    }

    /// Exact mean of (ancilla sign × Z_s eigenvalue) for every Z-string s,
    /// computed by folding each readout with weights (+1, −1).
    pub fn expectations(&self) -> Result<Vec<f64>> {
        let mut op = Operator::basis_projector(self.n_data, 0);
        for step in &self.steps {
            match step {
                Step::Apply(m, t) => op.conjugate(m, t)?,
                Step::Noise(ch) => op.apply_kraus(ch.operators(), ch.targets())?,
                Step::Allocate(k) => op = op.append_zero_qubits(*k),
                Step::Readout(qs) => {
                    for &q in qs.iter().rev() {
                        op = op.fold_qubit(q, [1.0, -1.0])?;
                    }
                }
            }
        }
        Ok(op.z_string_expectations())
    }

    /// One physical shot: ancillas are measured with Born probabilities and
    /// the data register is sampled at the end.
    pub fn sample_shot(&self, seed: u64) -> Result<ShotRecord> {
        let mut rng = rng_from_seed(seed);
        let mut op = Operator::basis_projector(self.n_data, 0);
        let mut ancilla_sign = 1.0;
        for step in &self.steps {
            match step {
                Step::Apply(m, t) => op.conjugate(m, t)?,
                Step::Noise(ch) => op.apply_kraus(ch.operators(), ch.targets())?,
                Step::Allocate(k) => op = op.append_zero_qubits(*k),
                Step::Readout(qs) => {
                    for &q in qs.iter().rev() {
                        let one = op.fold_qubit(q, [0.0, 1.0])?;
                        let p1 = one.trace().re.clamp(0.0, 1.0);
                        op = if rng.random::<f64>() < p1 {
                            ancilla_sign = -ancilla_sign;
                            one
                        } else {
                            op.fold_qubit(q, [1.0, 0.0])?
                        };
                        let tr = op.trace().re;
                        op.scale(1.0 / tr);
                    }
                }
            }
        }
        let u: f64 = rng.random();
        let diag = op.diagonal();
        let mut acc = 0.0;
        let mut bitstring = diag.len() - 1;
        for (x, p) in diag.iter().enumerate() {
            acc += p.max(0.0);
            if u < acc {
                bitstring = x;
                break;
            }
        }
        Ok(ShotRecord { ancilla_sign, bitstring })
    }
}
