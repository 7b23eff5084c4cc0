//! Standard gate matrices and the validated [`GateOp`] carrier.

use super::operator::check_targets;
use super::{Matrix, C64};
use crate::error::{Error, Result};

const UNITARITY_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(k: usize) -> Matrix {
    Matrix::identity(1 << k, 1 << k)
}

pub fn x() -> Matrix {
    Matrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn y() -> Matrix {
    Matrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn z() -> Matrix {
    Matrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

pub fn h() -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_row_slice(2, 2, &[c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.)])
}

pub fn s() -> Matrix {
    Matrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)])
}

pub fn sdg() -> Matrix {
    s().adjoint()
}

/// |0⟩⟨0| ⊗ a + |1⟩⟨1| ⊗ b, control first.
pub fn controlled(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.nrows();
    let mut m = Matrix::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(a);
    m.view_mut((d, d), (d, d)).copy_from(b);
    m
}

/// CNOT with the control on the first target.
pub fn cnot() -> Matrix {
    controlled(&identity(1), &x())
}

pub fn cz() -> Matrix {
    controlled(&identity(1), &z())
}

/// The four single-qubit Paulis I, X, Y, Z.
pub fn paulis() -> [Matrix; 4] {
    [identity(1), x(), y(), z()]
}

/// All k-qubit Pauli strings in lexicographic order; index 0 is the identity.
pub fn pauli_strings(k: usize) -> Vec<Matrix> {
    let base = paulis();
    let mut out = vec![Matrix::identity(1, 1)];
    for _ in 0..k {
        out = out.iter().flat_map(|m| base.iter().map(move |p| m.kronecker(p))).collect();
    }
    out
}

/// Largest elementwise deviation of U·U† from the identity.
pub fn unitarity_residual(u: &Matrix) -> f64 {
    let d = u.nrows();
    (u * u.adjoint() - Matrix::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A unitary embedded on an ordered list of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    unitary: Matrix,
    targets: Vec<usize>,
}

impl GateOp {
    pub fn new(unitary: Matrix, targets: Vec<usize>) -> Result<Self> {
        let d = 1usize << targets.len();
        if unitary.nrows() != d || unitary.ncols() != d {
            return Err(Error::Dimension(format!(
                "{}x{} unitary on {} targets",
                unitary.nrows(),
                unitary.ncols(),
                targets.len()
            )));
        }
        check_targets(usize::MAX >> 1, &targets)?;
        let residual = unitarity_residual(&unitary);
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary(residual));
        }
        Ok(GateOp { unitary, targets })
    }

    pub fn h(q: usize) -> Self {
        Self::new(h(), vec![q]).expect("H is unitary")
    }

    pub fn x(q: usize) -> Self {
        Self::new(x(), vec![q]).expect("X is unitary")
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(cnot(), vec![control, target])
    }

    pub fn cz(a: usize, b: usize) -> Result<Self> {
        Self::new(cz(), vec![a, b])
    }

    pub fn unitary(&self) -> &Matrix {
        &self.unitary
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn adjoint(&self) -> GateOp {
        GateOp { unitary: self.unitary.adjoint(), targets: self.targets.clone() }
    }

    pub fn is_identity(&self) -> bool {
        let d = self.unitary.nrows();
        (&self.unitary - Matrix::identity(d, d)).iter().all(|z| z.norm() < 1e-15)
    }
}
