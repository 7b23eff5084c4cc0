use crate::error::{Error, Result};
use crate::qsim::{DensityMatrix, Matrix, Operator, C64};
use serde::{Deserialize, Serialize};

/// Microwave-to-optical transducer operating point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransducerParams {
    /// Input-referred added noise quanta, ≥ 0.
    pub n_add: f64,
    /// Conversion efficiency in [0, 1].
    pub eta: f64,
    pub bandwidth_hz: f64,
    pub op_time_s: f64,
    /// Excitation probability in [0, 1].
    pub p_e: f64,
}

impl Default for TransducerParams {
    fn default() -> Self {
        TransducerParams { n_add: 0.0, eta: 0.5, bandwidth_hz: 1e7, op_time_s: 1e-6, p_e: 0.5 }
    }
}

impl TransducerParams {
    pub fn with_n_add(n_add: f64) -> Self {
        TransducerParams { n_add, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.n_add >= 0.0
            && (0.0..=1.0).contains(&self.eta)
            && self.bandwidth_hz >= 0.0
            && self.op_time_s >= 0.0
            && (0.0..=1.0).contains(&self.p_e);
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!("transducer parameters out of range: {self:?}")))
        }
    }
}

/// P_d = (1 − exp(−r_N·T/2))² with added-noise rate r_N = η·B·N_add.
pub fn dark_count_probability(params: &TransducerParams) -> f64 {
    let r_n = params.eta * params.bandwidth_hz * params.n_add;
    (1.0 - (-r_n * params.op_time_s / 2.0).exp()).powi(2)
}

/// Unnormalized weights of the four components of the heralded pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellCoefficients {
    /// Weight of |00⟩⟨00|.
    pub c00: f64,
    /// Weight of |Ψ+⟩⟨Ψ+|.
    pub c_psi: f64,
    /// Weight of each of |01⟩⟨01| and |10⟩⟨10|.
    pub c0110: f64,
    /// Weight of |11⟩⟨11|.
    pub c11: f64,
}

impl BellCoefficients {
    /// Trace of the unnormalized matrix; c0110 multiplies two projectors.
    pub fn normalization(&self) -> f64 {
        self.c00 + self.c_psi + 2.0 * self.c0110 + self.c11
    }
}

/// Term-by-term evaluation of the heralded two-click state weights.
pub fn bell_coefficients(params: &TransducerParams) -> BellCoefficients {
    let pd = dark_count_probability(params);
    let pe = params.p_e;
    let eta = params.eta;
    let loss2 = (1.0 - eta) * (1.0 - eta);
    let c00 = (1.0 - pe * pe)
        * 2.0
        * pd
        * (1.0 - pd)
        * ((1.0 - loss2) * (1.0 - pd) + loss2 * 2.0 * pd * (1.0 - pd));
    let c_psi = 2.0 * pe * (1.0 - pe) * eta * eta * (1.0 - pd) * (1.0 - pd);
    let c0110 = (eta * (1.0 - pd) + (1.0 - eta) * (1.0 - pd) * 2.0 * pd).powi(2)
        - eta * eta * (1.0 - pd) * (1.0 - pd);
    let c11 = pe * pe * ((1.0 - loss2) + loss2 * 2.0 * pd) * (1.0 - pd) * (1.0 - pd) * 2.0 * pd;
    BellCoefficients { c00, c_psi, c0110, c11 }
}

/// Noisy pair on the two communication qubits, ordered (q1c, q2c).
#[derive(Clone, Debug, PartialEq)]
pub struct NoisyBellState {
    sigma: DensityMatrix,
}

impl NoisyBellState {
    /// Wraps an arbitrary valid two-qubit state.
    pub fn from_state(sigma: DensityMatrix) -> Result<Self> {
        if sigma.n_qubits() != 2 {
            return Err(Error::Dimension(format!("{}-qubit Bell state", sigma.n_qubits())));
        }
        Ok(NoisyBellState { sigma })
    }

    pub fn ideal() -> Self {
        NoisyBellState { sigma: DensityMatrix::pure(&psi_plus()).expect("nonzero") }
    }

    pub fn sigma(&self) -> &DensityMatrix {
        &self.sigma
    }

    /// ⟨Ψ+|σ|Ψ+⟩.
    pub fn fidelity(&self) -> f64 {
        self.sigma.overlap(&psi_plus())
    }
}

/// (|01⟩ + |10⟩)/√2.
pub fn psi_plus() -> [C64; 4] {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [C64::default(), s, s, C64::default()]
}

/// σ normalized by its trace.
pub fn bell_density_matrix(params: &TransducerParams) -> Result<NoisyBellState> {
    params.validate()?;
    let c = bell_coefficients(params);
    let norm = c.normalization();
    if !(norm > 0.0) {
        return Err(Error::DegenerateBellState);
    }
    let mut m = Matrix::zeros(4, 4);
    let re = |x: f64| C64::new(x / norm, 0.0);
    m[(0, 0)] = re(c.c00);
    m[(1, 1)] = re(c.c0110 + c.c_psi / 2.0);
    m[(2, 2)] = re(c.c0110 + c.c_psi / 2.0);
    m[(1, 2)] = re(c.c_psi / 2.0);
    m[(2, 1)] = re(c.c_psi / 2.0);
    m[(3, 3)] = re(c.c11);
    let sigma = DensityMatrix::new(Operator::from_matrix(m)?)?;
    Ok(NoisyBellState { sigma })
}
