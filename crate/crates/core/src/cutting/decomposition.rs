use crate::qsim::gates;
use crate::qsim::{Matrix, SimRng, C64};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

/// One term α·(A ⊗ B) of a local decomposition of a two-qubit gate.
#[derive(Clone, Debug, PartialEq)]
pub struct CutTerm {
    pub alpha: f64,
    /// Acts on the control side.
    pub a: Matrix,
    /// Acts on the target side.
    pub b: Matrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliCutDecomposition {
    pub terms: Vec<CutTerm>,
}

/// CNOT = ½(I⊗I + I⊗X + Z⊗I + (−Z)⊗X).
pub fn cnot_decomposition() -> PauliCutDecomposition {
    let (i, x, z) = (gates::identity(1), gates::x(), gates::z());
    let neg_z = -z.clone();
    let terms = [(i.clone(), i.clone()), (i.clone(), x.clone()), (z, i), (neg_z, x)]
        .into_iter()
        .map(|(a, b)| CutTerm { alpha: 0.5, a, b })
        .collect();
    PauliCutDecomposition { terms }
}

impl PauliCutDecomposition {
    /// Σ_i α_i (A_i ⊗ B_i).
    pub fn reassemble(&self) -> Matrix {
        self.terms
            .iter()
            .fold(Matrix::zeros(4, 4), |acc, t| acc + t.a.kronecker(&t.b) * C64::new(t.alpha, 0.0))
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.alpha.abs()).sum()
    }

    pub fn l2_norm_squared(&self) -> f64 {
        self.terms.iter().map(|t| t.alpha * t.alpha).sum()
    }

    /// q(U) = 2‖α‖₁² − ‖α‖₂².
    pub fn cost(&self) -> f64 {
        2.0 * self.l1_norm().powi(2) - self.l2_norm_squared()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Sampled term pair (i, j) and ancilla basis k (0: X, 1: Y). Diagonal
/// pairs only take k = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QpdOutcome {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl QpdOutcome {
    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    /// Sign c_k of the ancilla-basis contribution: +1 for X, −1 for Y.
    pub fn basis_sign(&self) -> f64 {
        if self.k == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Quasiprobability sampler over admissible outcomes of one cut.
#[derive(Clone, Debug)]
pub struct QpdSampler {
    decomposition: PauliCutDecomposition,
    outcomes: Vec<QpdOutcome>,
    pmf: Vec<f64>,
    cost: f64,
    index: WeightedIndex<f64>,
}

impl QpdSampler {
    pub fn new(decomposition: PauliCutDecomposition) -> Self {
        let m = decomposition.len();
        let cost = decomposition.cost();
        let mut outcomes = Vec::new();
        let mut pmf = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..2 {
                    if i == j && k == 1 {
                        continue;
                    }
                    outcomes.push(QpdOutcome { i, j, k });
                    pmf.push(decomposition.terms[i].alpha.abs() * decomposition.terms[j].alpha.abs() / cost);
                }
            }
        }
        let index = WeightedIndex::new(&pmf).expect("nonnegative weights with positive sum");
        QpdSampler { decomposition, outcomes, pmf, cost, index }
    }

    pub fn decomposition(&self) -> &PauliCutDecomposition {
        &self.decomposition
    }

    pub fn outcomes(&self) -> &[QpdOutcome] {
        &self.outcomes
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// sgn(α_i)·sgn(α_j).
    pub fn sign(&self, o: QpdOutcome) -> f64 {
        let t = &self.decomposition.terms;
        t[o.i].alpha.signum() * t[o.j].alpha.signum()
    }

    /// Exact weight α_i·α_j·c_k of the outcome in the expectation value.
    pub fn coefficient(&self, o: QpdOutcome) -> f64 {
        let t = &self.decomposition.terms;
        t[o.i].alpha * t[o.j].alpha * o.basis_sign()
    }

    /// Importance weight coefficient / pmf = q·sgn(α_i α_j)·c_k.
    pub fn weight(&self, o: QpdOutcome) -> f64 {
        self.cost * self.sign(o) * o.basis_sign()
    }

    /// Index into [`outcomes`](Self::outcomes) of one draw.
    pub fn sample_index(&self, rng: &mut SimRng) -> usize {
        self.index.sample(rng)
    }
}
