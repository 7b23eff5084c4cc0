use super::{cnot_decomposition, reconstruct_distribution, CutTable, QpdSampler, ReconstructionResult};
use crate::error::{Error, Result};
use crate::noise::{GateRole, NoiseModel};
use crate::qsim::gates;
use crate::qsim::{derive_seed, rng_from_seed, Matrix, Operator};
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

/// How the per-subexperiment shot budget is spent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutAllocation {
    /// Every outcome tuple runs exactly N_shots times and is combined with
    /// its exact quasiprobability coefficient.
    #[default]
    Stratified,
    /// Each of the N_shots shots draws its own outcome tuple from the pmf and
    /// is reweighted by Π q·sgn·c_k.
    Sampled,
}

fn check_size(n: usize) -> Result<()> {
    if (2..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("GHZ size {n} outside 2..=6")))
    }
}

fn apply_noisy(op: &mut Operator, m: &Matrix, targets: &[usize], noise: &NoiseModel) -> Result<()> {
    op.conjugate(m, targets)?;
    if let Some(ch) = noise.after_gate(GateRole::Circuit, targets)? {
        op.apply_kraus(ch.operators(), ch.targets())?;
    }
    Ok(())
}

fn root_state(n: usize, noise: &NoiseModel) -> Result<Operator> {
    let mut op = Operator::basis_projector(n, 0);
    apply_noisy(&mut op, &gates::h(), &[0], noise)?;
    Ok(op)
}

/// Z-string expectations of the uncut GHZ-n circuit, with the local error of
/// every H and CNOT.
pub fn uncut_expectations(n: usize, noise: &NoiseModel) -> Result<Vec<f64>> {
    check_size(n)?;
    let mut op = root_state(n, noise)?;
    for k in 1..n {
        apply_noisy(&mut op, &gates::cnot(), &[0, k], noise)?;
    }
    Ok(op.z_string_expectations())
}

/// Deterministic enumeration of Σ_{i,j} α_i α_j (A_i⊗B_i) ρ (A_j⊗B_j)† over
/// all term pairs of every cut. Each cut CNOT keeps its own local error, so
/// the result must equal [`uncut_expectations`].
pub fn exact_cut_expectations(n: usize, noise: &NoiseModel) -> Result<Vec<f64>> {
    check_size(n)?;
    let decomposition = cnot_decomposition();
    let products: Vec<(f64, Matrix)> =
        decomposition.terms.iter().map(|t| (t.alpha, t.a.kronecker(&t.b))).collect();
    let mut acc = vec![0.0; 1 << n];
    let root = root_state(n, noise)?;
    fn visit(
        op: &Operator,
        cut: usize,
        weight: f64,
        products: &[(f64, Matrix)],
        noise: &NoiseModel,
        acc: &mut [f64],
    ) -> Result<()> {
        let n = op.n_qubits();
        if cut + 1 == n {
            for (a, e) in acc.iter_mut().zip(op.z_string_expectations()) {
                *a += weight * e;
            }
            return Ok(());
        }
        let targets = [0, cut + 1];
        for (ai, pi) in products {
            for (aj, pj) in products {
                let mut next = op.clone();
                next.sandwich(pi, pj, &targets)?;
                if let Some(ch) = noise.after_gate(GateRole::Circuit, &targets)? {
                    next.apply_kraus(ch.operators(), ch.targets())?;
                }
                visit(&next, cut + 1, weight * ai * aj, products, noise, acc)?;
            }
        }
        Ok(())
    }
    visit(&root, 0, 1.0, &products, noise, &mut acc)?;
    Ok(acc)
}

/// Limit of both estimators as N_shots → ∞: Σ_t coefficient_t · mean_t with
/// the subexperiments' own local errors.
pub fn expected_cut_expectations(n: usize, noise: &NoiseModel) -> Result<Vec<f64>> {
    check_size(n)?;
    Ok(CutTable::new(n, &QpdSampler::new(cnot_decomposition()), noise)?.expectations())
}

fn outcome_sign(rng: &mut impl Rng, mean: f64) -> f64 {
    if rng.random::<f64>() < (1.0 + mean) / 2.0 {
        1.0
    } else {
        -1.0
    }
}

/// IID estimator: for every Z-string and every shot, one outcome per cut is
/// drawn from the pmf, the subexperiment yields a ±1 product of ancilla and
/// observable eigenvalues with its exact mean from `table`, and the value is
/// reweighted by Π q·sgn·c_k. Observable s uses substream (seed, s).
pub fn sample_cut_estimate_with(table: &CutTable, n_shots: u64, seed: u64) -> Result<ReconstructionResult> {
    if n_shots == 0 {
        return Err(Error::Parameter("n_shots must be positive".into()));
    }
    let sampler = table.sampler();
    let cuts = table.n_cuts();
    let mut digits = vec![0usize; cuts];
    let expectations = (0..1usize << table.n())
        .map(|s| {
            let mut rng = rng_from_seed(derive_seed(seed, &[s as u64]));
            let mut total = 0.0;
            for _ in 0..n_shots {
                for d in digits.iter_mut() {
                    *d = sampler.sample_index(&mut rng);
                }
                let tuple = table.encode(&digits);
                let mean = table.mean(tuple, &digits, s);
                total += table.weight(&digits) * outcome_sign(&mut rng, mean);
            }
            total / n_shots as f64
        })
        .collect::<Vec<f64>>();
    let mut result = reconstruct_distribution(&expectations, n_shots)?;
    result.shots_per_subexperiment = n_shots;
    Ok(result)
}

/// [`sample_cut_estimate_with`] on a freshly built table for the CNOT
/// decomposition.
pub fn sample_cut_estimate(n: usize, n_shots: u64, noise: &NoiseModel, seed: u64) -> Result<ReconstructionResult> {
    check_size(n)?;
    let table = CutTable::new(n, &QpdSampler::new(cnot_decomposition()), noise)?;
    sample_cut_estimate_with(&table, n_shots, seed)
}

/// Stratified estimator: every outcome tuple runs `n_shots` times. Tuples of
/// one Z-string with equal coefficient and mean are merged, which is exact
/// because their ±1 tallies add to a single binomial.
pub fn stratified_cut_estimate(
    groups: &[super::GroupedObservable],
    n_shots: u64,
    seed: u64,
) -> Result<ReconstructionResult> {
    if n_shots == 0 {
        return Err(Error::Parameter("n_shots must be positive".into()));
    }
    let n = n_shots as f64;
    let expectations = groups
        .iter()
        .enumerate()
        .map(|(s, g)| {
            let mut rng = rng_from_seed(derive_seed(seed, &[s as u64]));
            g.coefficients
                .iter()
                .zip(&g.means)
                .zip(&g.counts)
                .map(|((&c, &mu), &count)| {
                    let trials = count * n_shots;
                    let p = ((1.0 + mu) / 2.0).clamp(0.0, 1.0);
                    let plus = Binomial::new(trials, p).expect("p in [0, 1]").sample(&mut rng) as f64;
                    c * (2.0 * plus - trials as f64) / n
                })
                .sum()
        })
        .collect::<Vec<f64>>();
    let mut result = reconstruct_distribution(&expectations, n_shots)?;
    result.shots_per_subexperiment = n_shots;
    Ok(result)
}
