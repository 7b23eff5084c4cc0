use super::NoisyBellState;
use crate::error::{Error, Result};
use crate::qsim::{KrausChannel, Matrix, C64, PSD_TOL};
use nalgebra::linalg::SymmetricEigen;

/// Eigenvalues below this are dropped before taking square roots.
const EIGEN_CUTOFF: f64 = 1e-12;

/// Channel ρ ↦ Tr(ρ)·σ with Kraus operators K_{i,j} = √λ_i |ψ_i⟩⟨j| built
/// from σ = Σ_i λ_i |ψ_i⟩⟨ψ_i| and the computational basis {|j⟩}.
pub fn replacement_channel(bell: &NoisyBellState, targets: [usize; 2]) -> Result<KrausChannel> {
    let m = bell.sigma().operator().matrix().clone();
    let eig = SymmetricEigen::new(m);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(Error::InvalidState(format!("σ eigenvalue {min:.3e}")));
    }
    let kept: Vec<usize> = (0..4).filter(|&i| eig.eigenvalues[i] > EIGEN_CUTOFF).collect();
    let total: f64 = kept.iter().map(|&i| eig.eigenvalues[i]).sum();
    let mut ops = Vec::with_capacity(4 * kept.len());
    for &i in &kept {
        let amp = C64::new((eig.eigenvalues[i] / total).sqrt(), 0.0);
        let psi = eig.eigenvectors.column(i);
        for j in 0..4 {
            let mut k = Matrix::zeros(4, 4);
            for r in 0..4 {
                k[(r, j)] = amp * psi[r];
            }
            ops.push(k);
        }
    }
    KrausChannel::new(ops, targets.to_vec())
}
