mod common;

use common::c;
use proptest::prelude::*;
use telecut::noise::{
    bell_coefficients, bell_density_matrix, dark_count_probability, depolarizing_channel, pauli_error_probability,
    psi_plus, replacement_channel, DepolarizingSpec, FidelityConvention, GateRole, NoiseModel, NoisePlacement,
    NoisyBellState, TransducerParams,
};
use telecut::qsim::gates;
use telecut::qsim::{apply_kraus, DensityMatrix, Matrix, Operator};

fn default_grid() -> Vec<f64> {
    (0..30).map(|i| 1e-4 * 10f64.powf(4.0 * i as f64 / 29.0)).collect()
}

#[test]
fn dark_count_examples() {
    assert_eq!(dark_count_probability(&TransducerParams::with_n_add(0.0)), 0.0);
    let no_time = TransducerParams { op_time_s: 0.0, ..TransducerParams::with_n_add(0.3) };
    assert_eq!(dark_count_probability(&no_time), 0.0);
    // r_N·T/2 = 0.25 at N_add = 0.1 with the default operating point.
    let p = dark_count_probability(&TransducerParams::with_n_add(0.1));
    assert!((p - 0.04892909356982369).abs() < 1e-15);
    // r_N·T/2 = 0.025 needs N_add = 0.01.
    let p = dark_count_probability(&TransducerParams::with_n_add(0.01));
    assert!((p / (1.0 - (-0.025f64).exp()).powi(2) - 1.0).abs() < 1e-12);
    assert!((p - 6.097e-4).abs() < 1e-7);
}

#[test]
fn sigma_at_zero_noise_is_psi_plus() {
    let bell = bell_density_matrix(&TransducerParams::with_n_add(0.0)).unwrap();
    let ideal = DensityMatrix::pure(&psi_plus()).unwrap();
    assert!(bell.sigma().max_abs_diff(&ideal) < 1e-10);
    assert_eq!(bell.sigma(), NoisyBellState::ideal().sigma());
    let k = bell_coefficients(&TransducerParams::with_n_add(0.0));
    assert_eq!((k.c00, k.c0110, k.c11), (0.0, 0.0, 0.0));
}

#[test]
fn sigma_matches_closed_form_elementwise() {
    for n_add in [1e-3, 0.05, 0.1, 0.3, 1.0] {
        let (p00, mid, coh, p11) = common::sigma_closed_form(n_add);
        let mut m = Matrix::zeros(4, 4);
        m[(0, 0)] = c(p00);
        m[(1, 1)] = c(mid);
        m[(2, 2)] = c(mid);
        m[(1, 2)] = c(coh);
        m[(2, 1)] = c(coh);
        m[(3, 3)] = c(p11);
        let sigma = bell_density_matrix(&TransducerParams::with_n_add(n_add)).unwrap();
        assert!(common::max_abs(sigma.sigma().operator().matrix(), &m) < 1e-14, "N_add {n_add}");
    }
}

#[test]
fn bell_fidelity_is_monotone_on_default_grid() {
    let f: Vec<f64> =
        default_grid().iter().map(|&x| bell_density_matrix(&TransducerParams::with_n_add(x)).unwrap().fidelity()).collect();
    assert!(f.windows(2).all(|w| w[1] <= w[0]), "{f:?}");
    let near_zero = bell_density_matrix(&TransducerParams::with_n_add(1e-6)).unwrap().fidelity();
    assert!(near_zero > 1.0 - 1e-6);
}

#[test]
fn sigma_is_a_state_on_listed_points() {
    for n_add in [0.0, 1e-4, 1e-3, 1e-2, 1e-1, 0.3, 1.0] {
        let sigma = bell_density_matrix(&TransducerParams::with_n_add(n_add)).unwrap();
        let op = sigma.sigma().operator();
        assert!((op.trace().re - 1.0).abs() < 1e-12);
        assert!(op.hermiticity_defect() < 1e-15);
        assert!(op.hermitian_eigenvalues()[0] > -1e-12);
    }
}

#[test]
fn invalid_transducer_params_rejected() {
    assert!(bell_density_matrix(&TransducerParams::with_n_add(-0.1)).is_err());
    assert!(bell_density_matrix(&TransducerParams { eta: 1.5, ..Default::default() }).is_err());
    let dead = TransducerParams { eta: 0.0, ..Default::default() };
    assert!(bell_density_matrix(&dead).is_err());
}

#[test]
fn replacement_of_psi_plus_maps_phi_plus_to_psi_plus() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let phi = DensityMatrix::pure(&[c(r), c(0.0), c(0.0), c(r)]).unwrap();
    let ch = replacement_channel(&NoisyBellState::ideal(), [0, 1]).unwrap();
    let out = apply_kraus(&phi, &ch).unwrap();
    assert!(out.max_abs_diff(NoisyBellState::ideal().sigma()) < 1e-12);
}

#[test]
fn replacement_of_maximally_mixed_outputs_maximally_mixed() {
    let mixed = NoisyBellState::from_state(DensityMatrix::maximally_mixed(2)).unwrap();
    let ch = replacement_channel(&mixed, [0, 1]).unwrap();
    assert!(ch.completeness_residual() < 1e-12);
    for seed in 0..4 {
        let out = apply_kraus(&common::random_density(2, seed), &ch).unwrap();
        assert!(out.max_abs_diff(&DensityMatrix::maximally_mixed(2)) < 1e-12);
    }
}

#[test]
fn replacement_outputs_sigma_for_random_pure_inputs() {
    let bell = bell_density_matrix(&TransducerParams::with_n_add(0.1)).unwrap();
    let ch = replacement_channel(&bell, [0, 1]).unwrap();
    let mut r = common::rng(17);
    let mut previous: Option<DensityMatrix> = None;
    for _ in 0..8 {
        let psi = DensityMatrix::pure(&common::random_amplitudes(4, &mut r)).unwrap();
        let out = apply_kraus(&psi, &ch).unwrap();
        assert!(out.max_abs_diff(bell.sigma()) < 1e-9);
        if let Some(p) = &previous {
            assert!(out.max_abs_diff(p) < 1e-9);
        }
        previous = Some(out);
    }
}

#[test]
fn replacement_acts_only_on_its_targets() {
    let bell = bell_density_matrix(&TransducerParams::with_n_add(0.05)).unwrap();
    let ch = replacement_channel(&bell, [2, 0]).unwrap();
    let out = apply_kraus(&DensityMatrix::basis_state(3, 0b010), &ch).unwrap();
    let middle = telecut::qsim::partial_trace(&out, &[1]).unwrap();
    assert!(middle.max_abs_diff(&DensityMatrix::basis_state(1, 1)) < 1e-12);
    let pair = telecut::qsim::partial_trace(&out, &[2, 0]).unwrap();
    assert!(pair.max_abs_diff(bell.sigma()) < 1e-12);
}

#[test]
fn depolarizing_examples() {
    let perfect = DepolarizingSpec::new(1, 1.0).unwrap();
    let ch = depolarizing_channel(&perfect, FidelityConvention::Process, vec![0]).unwrap();
    assert_eq!(ch.operators().len(), 1);
    let rho = common::random_density(1, 4);
    assert!(apply_kraus(&rho, &ch).unwrap().max_abs_diff(&rho) < 1e-15);

    let spec = DepolarizingSpec::new(1, 0.99).unwrap();
    let p = pauli_error_probability(&spec, FidelityConvention::Average).unwrap();
    assert!((p - 0.015).abs() < 1e-15);
    let ch = depolarizing_channel(&spec, FidelityConvention::Average, vec![0]).unwrap();
    let out = apply_kraus(&DensityMatrix::zero_state(1), &ch).unwrap();
    let diag = out.operator().diagonal();
    assert!((diag[0] - 0.99).abs() < 1e-15 && (diag[1] - 0.01).abs() < 1e-15, "{diag:?}");

    assert!((pauli_error_probability(&spec, FidelityConvention::Process).unwrap() - 0.01).abs() < 1e-15);
    let two = DepolarizingSpec::new(2, 0.98).unwrap();
    let lam = pauli_error_probability(&two, FidelityConvention::DepolarizingParameter).unwrap();
    assert!((lam - 0.02 * 15.0 / 16.0).abs() < 1e-15);
}

#[test]
fn depolarizing_rejects_impossible_fidelity() {
    let spec = DepolarizingSpec { n_qubits: 1, gate_fidelity: 0.2 };
    assert!(pauli_error_probability(&spec, FidelityConvention::Average).is_err());
    assert!(DepolarizingSpec::new(3, 0.9).is_err());
    assert!(DepolarizingSpec::new(1, 0.0).is_err());
}

fn pauli_expectations(rho: &DensityMatrix) -> Vec<f64> {
    gates::pauli_strings(rho.n_qubits())
        .iter()
        .map(|p| (p * rho.operator().matrix()).trace().re)
        .collect()
}

#[test]
fn depolarizing_twice_composes_the_shrink_factor() {
    for k in [1usize, 2] {
        let spec = DepolarizingSpec::new(k, 0.9).unwrap();
        let ch = depolarizing_channel(&spec, FidelityConvention::DepolarizingParameter, (0..k).collect()).unwrap();
        let lam = 0.1;
        let rho = common::random_density(k, 8 + k as u64);
        let once = pauli_expectations(&rho);
        let twice = pauli_expectations(&apply_kraus(&apply_kraus(&rho, &ch).unwrap(), &ch).unwrap());
        let composed = 1.0 - (1.0 - lam) * (1.0 - lam);
        for (a, b) in once.iter().zip(&twice).skip(1) {
            assert!((b - (1.0 - composed) * a).abs() < 1e-12);
        }
        assert!((twice[0] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn noise_placement_charges_roles() {
    let local = NoiseModel::default();
    assert!(local.after_gate(GateRole::Circuit, &[0]).unwrap().is_some());
    assert!(local.after_gate(GateRole::TelegateLocal, &[0, 1]).unwrap().is_some());
    assert!(local.after_gate(GateRole::TelegateProtocol, &[0]).unwrap().is_none());
    assert!(local.after_gate(GateRole::QpdInserted, &[0, 1]).unwrap().is_none());
    let all = local.with_placement(NoisePlacement::Exhaustive);
    assert!(all.after_gate(GateRole::QpdInserted, &[0, 1]).unwrap().is_some());
    assert!(NoiseModel::ideal().after_gate(GateRole::Circuit, &[0]).unwrap().is_none());
    assert!(local.after_gate(GateRole::Circuit, &[0, 1, 2]).is_err());
}

#[test]
fn every_generated_channel_is_complete() {
    for conv in [FidelityConvention::Process, FidelityConvention::Average, FidelityConvention::DepolarizingParameter] {
        for k in [1, 2] {
            for f in [0.5, 0.9, 0.98, 0.99, 0.999, 1.0] {
                let spec = DepolarizingSpec::new(k, f).unwrap();
                if let Ok(ch) = depolarizing_channel(&spec, conv, (0..k).collect()) {
                    assert!(ch.completeness_residual() < 1e-8);
                }
            }
        }
    }
    for x in default_grid() {
        let ch = replacement_channel(&bell_density_matrix(&TransducerParams::with_n_add(x)).unwrap(), [0, 1]).unwrap();
        assert!(ch.completeness_residual() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_a_state_for_any_params(
        n_add in 0.0f64..5.0,
        eta in 0.05f64..1.0,
        p_e in 0.05f64..0.95,
    ) {
        let params = TransducerParams { n_add, eta, p_e, ..Default::default() };
        let sigma = bell_density_matrix(&params).unwrap();
        let op = sigma.sigma().operator();
        prop_assert!((op.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(op.hermitian_eigenvalues()[0] > -1e-12);
        prop_assert!(replacement_channel(&sigma, [0, 1]).unwrap().completeness_residual() < 1e-8);
    }

    #[test]
    fn replacement_is_input_independent(seed in any::<u64>(), n_add in 0.0f64..1.0) {
        let bell = bell_density_matrix(&TransducerParams::with_n_add(n_add)).unwrap();
        let ch = replacement_channel(&bell, [1, 0]).unwrap();
        let a = apply_kraus(&common::random_density(2, seed), &ch).unwrap();
        let b = apply_kraus(&common::random_density(2, seed ^ 0x55), &ch).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-9);
    }

    #[test]
    fn depolarizing_preserves_trace(seed in any::<u64>(), f in 0.6f64..=1.0, two in any::<bool>()) {
        let k = if two { 2 } else { 1 };
        let ch = depolarizing_channel(&DepolarizingSpec::new(k, f).unwrap(), FidelityConvention::Average, (0..k).collect()).unwrap();
        prop_assert!(ch.completeness_residual() < 1e-8);
        let out = apply_kraus(&common::random_density(2, seed), &ch).unwrap();
        prop_assert!((out.trace() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn from_state_requires_two_qubits() {
    assert!(NoisyBellState::from_state(DensityMatrix::zero_state(1)).is_err());
    let op = Operator::basis_projector(2, 3);
    assert!(NoisyBellState::from_state(DensityMatrix::new(op).unwrap()).is_ok());
}
