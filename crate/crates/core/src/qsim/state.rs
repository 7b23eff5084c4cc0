use super::{GateOp, KrausChannel, Operator, OutcomeDistribution, C64, CORRUPT_TOL, PSD_TOL, STATE_TOL};
use crate::error::{Error, Result};

/// A register state: Hermitian, unit trace and positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Operator);

impl DensityMatrix {
    /// Wraps `op` after checking all state invariants.
    pub fn new(op: Operator) -> Result<Self> {
        let s = DensityMatrix(op);
        s.validate()?;
        Ok(s)
    }

    /// |0…0⟩⟨0…0| on `n` qubits.
    pub fn zero_state(n: usize) -> Self {
        DensityMatrix(Operator::basis_projector(n, 0))
    }

    pub fn basis_state(n: usize, index: usize) -> Self {
        DensityMatrix(Operator::basis_projector(n, index))
    }

    /// Pure state from amplitudes, normalized here.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm <= 0.0 {
            return Err(Error::InvalidState("zero amplitude vector".into()));
        }
        let mut op = Operator::outer(amplitudes)?;
        op.scale(1.0 / norm);
        Ok(DensityMatrix(op))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let d = 1usize << n;
        let m = super::Matrix::identity(d, d) * C64::new(1.0 / d as f64, 0.0);
        DensityMatrix(Operator::from_matrix(m).expect("square power-of-two"))
    }

    pub fn validate(&self) -> Result<()> {
        let herm = self.0.hermiticity_defect();
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!("Hermiticity defect {herm:.3e}")));
        }
        let tr = self.0.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let min = self.0.hermitian_eigenvalues()[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    pub fn operator(&self) -> &Operator {
        &self.0
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// ⟨ψ|ρ|ψ⟩ for a normalized amplitude vector.
    pub fn overlap(&self, psi: &[C64]) -> f64 {
        let d = self.0.dim();
        assert_eq!(psi.len(), d, "amplitude count differs from dimension");
        let mut acc = C64::default();
        for r in 0..d {
            for c in 0..d {
                acc += psi[r].conj() * self.0.get(r, c) * psi[c];
            }
        }
        acc.re
    }

    /// Appends `k` qubits in |0⟩ after the existing ones.
    pub fn with_zero_qubits(&self, k: usize) -> Self {
        DensityMatrix(self.0.append_zero_qubits(k))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

/// ρ ← UρU† with the gate embedded on its targets.
pub fn apply_gate(state: &DensityMatrix, gate: &GateOp) -> Result<DensityMatrix> {
    let mut op = state.0.clone();
    op.conjugate(gate.unitary(), gate.targets())?;
    Ok(DensityMatrix(op))
}

/// ρ ← Σ_m K_m ρ K_m†.
pub fn apply_kraus(state: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    let mut op = state.0.clone();
    op.apply_kraus(channel.operators(), channel.targets())?;
    Ok(DensityMatrix(op))
}

/// Reduced state on `keep`, in ascending qubit order.
pub fn partial_trace(state: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    Ok(DensityMatrix(state.0.partial_trace(&sorted)?))
}

/// Computational-basis probabilities. Negative entries down to −1e-9 are
/// clamped and the vector renormalized; anything below −1e-6 is an error.
pub fn basis_probabilities(state: &DensityMatrix) -> Result<OutcomeDistribution> {
    let mut p = state.0.diagonal();
    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -CORRUPT_TOL {
        return Err(Error::InvalidState(format!("diagonal entry {min:.3e}")));
    }
    if min < 0.0 {
        p.iter_mut().for_each(|x| *x = x.max(0.0));
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
    }
    OutcomeDistribution::new(state.n_qubits(), p)
}
