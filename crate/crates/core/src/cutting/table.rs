use super::subexperiment::readout_rotation;
use super::{QpdOutcome, QpdSampler};
use crate::error::{Error, Result};
use crate::noise::{GateRole, NoiseModel};
use crate::qsim::gates::{self, controlled};
use crate::qsim::{Matrix, Operator, C64};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Resolution used to merge subexperiments with numerically equal means.
const MEAN_QUANTUM: f64 = 1e-12;

/// 2×2 operator stored row-major.
type Op2 = [C64; 4];
/// Linear map on [`Op2`] as a 4×4 row-major matrix.
type Superop = [C64; 16];

fn is_identity(m: &Matrix) -> bool {
    let d = m.nrows();
    (m - Matrix::identity(d, d)).iter().all(|z| z.norm() < 1e-15)
}

fn apply_gate(op: &mut Operator, m: &Matrix, targets: &[usize], role: GateRole, noise: &NoiseModel) -> Result<()> {
    if is_identity(m) {
        return Ok(());
    }
    op.conjugate(m, targets)?;
    if let Some(ch) = noise.after_gate(role, targets)? {
        op.apply_kraus(ch.operators(), ch.targets())?;
    }
    Ok(())
}

/// What one cut outcome does to the single data qubit of one module, with
/// that side's ancilla (qubit 1 here) read out and folded away.
fn local_map(x: &Operator, o: QpdOutcome, mi: &Matrix, mj: &Matrix, noise: &NoiseModel) -> Result<Operator> {
    let mut op = x.clone();
    if o.is_diagonal() {
        apply_gate(&mut op, mi, &[0], GateRole::QpdInserted, noise)?;
        return Ok(op);
    }
    let mut y = op.append_zero_qubits(1);
    apply_gate(&mut y, &gates::h(), &[1], GateRole::QpdInserted, noise)?;
    apply_gate(&mut y, &controlled(mi, mj), &[1, 0], GateRole::QpdInserted, noise)?;
    apply_gate(&mut y, &readout_rotation(o.k), &[1], GateRole::QpdInserted, noise)?;
    y.fold_qubit(1, [1.0, -1.0])
}

fn to_op2(x: &Operator) -> Op2 {
    [x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1)]
}

fn superop(f: impl Fn(&Operator) -> Result<Operator>) -> Result<Superop> {
    let mut s = [C64::default(); 16];
    for col in 0..4 {
        let mut m = Matrix::zeros(2, 2);
        m[(col / 2, col % 2)] = C64::new(1.0, 0.0);
        let out = to_op2(&f(&Operator::from_matrix(m)?)?);
        for row in 0..4 {
            s[row * 4 + col] = out[row];
        }
    }
    Ok(s)
}

fn apply_superop(s: &Superop, x: &Op2) -> Op2 {
    let mut out = [C64::default(); 4];
    for (r, slot) in out.iter_mut().enumerate() {
        *slot = (0..4).map(|c| s[r * 4 + c] * x[c]).sum();
    }
    out
}

/// (Tr X, Tr ZX), real parts.
fn trace_pair(x: &Op2) -> [f64; 2] {
    [(x[0] + x[3]).re, (x[0] - x[3]).re]
}

/// Exact subexperiment means for every outcome tuple of the cut GHZ-n
/// circuit. Every cut touches qubit 0 and one fresh peripheral, and all
/// inserted operations are local, so the mean of a Z-string factorizes into
/// a control-module factor and one factor per peripheral module.
#[derive(Clone, Debug)]
pub struct CutTable {
    n: usize,
    sampler: QpdSampler,
    /// (Tr, Tr Z) of qubit 0 per tuple, first cut most significant.
    control: Vec<[f64; 2]>,
    /// (Tr, Tr Z) of a peripheral qubit per outcome.
    target: Vec<[f64; 2]>,
}

/// The subexperiments of one Z-string, merged by (coefficient, mean).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupedObservable {
    pub coefficients: Vec<f64>,
    pub means: Vec<f64>,
    pub counts: Vec<u64>,
}

impl CutTable {
    pub fn new(n: usize, sampler: &QpdSampler, noise: &NoiseModel) -> Result<Self> {
        if !(2..=6).contains(&n) {
            return Err(Error::Parameter(format!("GHZ size {n} outside 2..=6")));
        }
        let terms = &sampler.decomposition().terms;
        let outcomes = sampler.outcomes();
        let mut ctrl_maps = Vec::with_capacity(outcomes.len());
        let mut target = Vec::with_capacity(outcomes.len());
        for &o in outcomes {
            let (ti, tj) = (&terms[o.i], &terms[o.j]);
            ctrl_maps.push(superop(|x| local_map(x, o, &ti.a, &tj.a, noise))?);
            let fresh = Operator::basis_projector(1, 0);
            target.push(trace_pair(&to_op2(&local_map(&fresh, o, &ti.b, &tj.b, noise)?)));
        }
        let mut root = Operator::basis_projector(1, 0);
        apply_gate(&mut root, &gates::h(), &[0], GateRole::Circuit, noise)?;
        let mut level = vec![to_op2(&root)];
        for _ in 1..n {
            level = level
                .par_iter()
                .flat_map_iter(|x| ctrl_maps.iter().map(move |s| apply_superop(s, x)))
                .collect();
        }
        let control = level.iter().map(trace_pair).collect();
        Ok(CutTable { n, sampler: sampler.clone(), control, target })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sampler(&self) -> &QpdSampler {
        &self.sampler
    }

    pub fn n_cuts(&self) -> usize {
        self.n - 1
    }

    pub fn n_tuples(&self) -> usize {
        self.control.len()
    }

    /// Outcome indices of a tuple, first cut first.
    pub fn decode(&self, tuple: usize) -> Vec<usize> {
        let m = self.sampler.outcomes().len();
        let mut digits = vec![0; self.n_cuts()];
        let mut t = tuple;
        for d in digits.iter_mut().rev() {
            *d = t % m;
            t /= m;
        }
        digits
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        let m = self.sampler.outcomes().len();
        digits.iter().fold(0, |acc, &d| acc * m + d)
    }

    fn bit(&self, s: usize, q: usize) -> usize {
        (s >> (self.n - 1 - q)) & 1
    }

    /// Mean of (ancilla sign × Z_s eigenvalue) for one tuple.
    pub fn mean(&self, tuple: usize, digits: &[usize], s: usize) -> f64 {
        digits
            .iter()
            .enumerate()
            .fold(self.control[tuple][self.bit(s, 0)], |acc, (k, &d)| acc * self.target[d][self.bit(s, k + 1)])
    }

    /// Π α_i α_j c_k over the cuts.
    pub fn coefficient(&self, digits: &[usize]) -> f64 {
        let outs = self.sampler.outcomes();
        digits.iter().map(|&d| self.sampler.coefficient(outs[d])).product()
    }

    /// Π q·sgn·c_k over the cuts.
    pub fn weight(&self, digits: &[usize]) -> f64 {
        let outs = self.sampler.outcomes();
        digits.iter().map(|&d| self.sampler.weight(outs[d])).product()
    }

    /// Σ_t coefficient_t · mean_{t,s} for every Z-string s.
    pub fn expectations(&self) -> Vec<f64> {
        (0..1usize << self.n)
            .map(|s| {
                (0..self.n_tuples())
                    .map(|t| {
                        let d = self.decode(t);
                        self.coefficient(&d) * self.mean(t, &d, s)
                    })
                    .sum()
            })
            .collect()
    }

    /// Subexperiments of Z-string `s` merged into groups of equal
    /// coefficient and equal mean (to 1e-12), in deterministic order.
    pub fn grouped(&self, s: usize) -> GroupedObservable {
        let mut groups: BTreeMap<(i64, i64), (f64, u64, f64)> = BTreeMap::new();
        for t in 0..self.n_tuples() {
            let d = self.decode(t);
            let c = self.coefficient(&d);
            let mu = self.mean(t, &d, s);
            let key = ((c / MEAN_QUANTUM).round() as i64, (mu / MEAN_QUANTUM).round() as i64);
            let e = groups.entry(key).or_insert((c, 0, 0.0));
            e.1 += 1;
            e.2 += mu;
        }
        let mut out = GroupedObservable { coefficients: Vec::new(), means: Vec::new(), counts: Vec::new() };
        for (c, count, sum) in groups.into_values() {
            out.coefficients.push(c);
            out.means.push(sum / count as f64);
            out.counts.push(count);
        }
        out
    }

    /// [`grouped`](Self::grouped) for every Z-string, computed in parallel.
    pub fn grouped_all(&self) -> Vec<GroupedObservable> {
        (0..1usize << self.n).into_par_iter().map(|s| self.grouped(s)).collect()
    }
}
