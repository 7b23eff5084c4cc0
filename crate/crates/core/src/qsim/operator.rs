use super::{Matrix, C64};
use crate::error::{Error, Result};
use nalgebra::linalg::SymmetricEigen;

/// Dense operator on a qubit register. Not necessarily a valid state:
/// cut-term evaluation pushes non-Hermitian operators through the same
/// kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    n_qubits: usize,
    m: Matrix,
}

/// Index bookkeeping for embedding a k-qubit matrix into an n-qubit register.
struct Embedding {
    offsets: Vec<usize>,
    bases: Vec<usize>,
}

impl Embedding {
    fn new(n: usize, targets: &[usize]) -> Self {
        let k = targets.len();
        let offsets = (0..1usize << k)
            .map(|m| {
                targets
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| (m >> (k - 1 - j)) & 1 == 1)
                    .fold(0, |acc, (_, &t)| acc | (1 << (n - 1 - t)))
            })
            .collect();
        let mask = targets.iter().fold(0usize, |acc, &t| acc | (1 << (n - 1 - t)));
        let bases = (0..1usize << n).filter(|i| i & mask == 0).collect();
        Embedding { offsets, bases }
    }
}

fn row_major(m: &Matrix) -> Vec<C64> {
    let d = m.nrows();
    let mut out = Vec::with_capacity(d * d);
    for r in 0..d {
        for c in 0..d {
            out.push(m[(r, c)]);
        }
    }
    out
}

pub(crate) fn check_targets(n: usize, targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::Targets("empty target list".into()));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::Targets(format!("qubit {t} outside register of {n}")));
        }
        if targets[..i].contains(&t) {
            return Err(Error::Targets(format!("qubit {t} repeated")));
        }
    }
    Ok(())
}

fn check_local(m: &Matrix, targets: &[usize]) -> Result<()> {
    let d = 1usize << targets.len();
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::Dimension(format!(
            "{}x{} matrix on {} targets",
            m.nrows(),
            m.ncols(),
            targets.len()
        )));
    }
    Ok(())
}

impl Operator {
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        let d = m.nrows();
        if d != m.ncols() || !d.is_power_of_two() || d < 2 {
            return Err(Error::Dimension(format!("{}x{} is not a register operator", d, m.ncols())));
        }
        Ok(Operator { n_qubits: d.trailing_zeros() as usize, m })
    }

    /// |index⟩⟨index| on `n` qubits.
    pub fn basis_projector(n: usize, index: usize) -> Self {
        let d = 1usize << n;
        let mut m = Matrix::zeros(d, d);
        m[(index, index)] = C64::new(1.0, 0.0);
        Operator { n_qubits: n, m }
    }

    /// |ψ⟩⟨ψ| for an unnormalized amplitude vector.
    pub fn outer(psi: &[C64]) -> Result<Self> {
        let d = psi.len();
        let v = nalgebra::DVector::from_column_slice(psi);
        Operator::from_matrix(&v * v.adjoint()).map_err(|_| Error::Dimension(format!("{d} amplitudes")))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.m[(r, c)]
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.m[(i, i)].re).collect()
    }

    pub fn scale(&mut self, s: f64) {
        self.m *= C64::new(s, 0.0);
    }

    pub fn add_assign(&mut self, other: &Operator) {
        self.m += &other.m;
    }

    /// Largest elementwise deviation |X − X†|.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.m[(r, c)] - self.m[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.m + self.m.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Largest elementwise distance to another operator of equal size.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator sizes differ");
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// X ← L·X with `local` embedded on `targets`.
    pub fn left_apply(&mut self, local: &Matrix, targets: &[usize]) -> Result<()> {
        check_targets(self.n_qubits, targets)?;
        check_local(local, targets)?;
        let emb = Embedding::new(self.n_qubits, targets);
        let u = row_major(local);
        let k = emb.offsets.len();
        let d = self.dim();
        let data = self.m.as_mut_slice();
        let mut buf = vec![C64::default(); k];
        for col in data.chunks_exact_mut(d) {
            for &b in &emb.bases {
                for (slot, &off) in buf.iter_mut().zip(&emb.offsets) {
                    *slot = col[b + off];
                }
                for (r, &off) in emb.offsets.iter().enumerate() {
                    let row = &u[r * k..(r + 1) * k];
                    col[b + off] = row.iter().zip(&buf).map(|(a, v)| a * v).sum();
                }
            }
        }
        Ok(())
    }

    /// X ← X·R† with `local` embedded on `targets`.
    pub fn right_apply_adjoint(&mut self, local: &Matrix, targets: &[usize]) -> Result<()> {
        check_targets(self.n_qubits, targets)?;
        check_local(local, targets)?;
        let emb = Embedding::new(self.n_qubits, targets);
        let u: Vec<C64> = row_major(local).into_iter().map(|z| z.conj()).collect();
        let k = emb.offsets.len();
        let d = self.dim();
        let data = self.m.as_mut_slice();
        let mut buf = vec![C64::default(); k];
        for &b in &emb.bases {
            for r in 0..d {
                for (slot, &off) in buf.iter_mut().zip(&emb.offsets) {
                    *slot = data[(b + off) * d + r];
                }
                for (c, &off) in emb.offsets.iter().enumerate() {
                    let row = &u[c * k..(c + 1) * k];
                    data[(b + off) * d + r] = row.iter().zip(&buf).map(|(a, v)| a * v).sum();
                }
            }
        }
        Ok(())
    }

    /// X ← L·X·R† on `targets`.
    pub fn sandwich(&mut self, left: &Matrix, right: &Matrix, targets: &[usize]) -> Result<()> {
        self.left_apply(left, targets)?;
        self.right_apply_adjoint(right, targets)
    }

    /// X ← U·X·U† on `targets`.
    pub fn conjugate(&mut self, u: &Matrix, targets: &[usize]) -> Result<()> {
        self.sandwich(u, u, targets)
    }

    /// X ← Σ_m K_m·X·K_m† on `targets`.
    pub fn apply_kraus(&mut self, operators: &[Matrix], targets: &[usize]) -> Result<()> {
        let mut acc: Option<Operator> = None;
        for k in operators {
            let mut term = self.clone();
            term.conjugate(k, targets)?;
            match acc.as_mut() {
                Some(a) => a.add_assign(&term),
                None => acc = Some(term),
            }
        }
        *self = acc.ok_or_else(|| Error::Dimension("empty Kraus set".into()))?;
        Ok(())
    }

    /// Removes qubit `q`, keeping Σ_b w_b ⟨b|X|b⟩. Weights (1, 1) give the
    /// partial trace, (1, −1) the Z-weighted trace used for ancilla readout.
    pub fn fold_qubit(&self, q: usize, weights: [f64; 2]) -> Result<Operator> {
        check_targets(self.n_qubits, &[q])?;
        if self.n_qubits == 1 {
            return Err(Error::Targets("cannot remove the last qubit".into()));
        }
        let p = self.n_qubits - 1 - q;
        let low = (1usize << p) - 1;
        let expand = |i: usize, bit: usize| ((i >> p) << (p + 1)) | (bit << p) | (i & low);
        let d = self.dim() / 2;
        let w = [C64::new(weights[0], 0.0), C64::new(weights[1], 0.0)];
        let m = Matrix::from_fn(d, d, |r, c| {
            w[0] * self.m[(expand(r, 0), expand(c, 0))] + w[1] * self.m[(expand(r, 1), expand(c, 1))]
        });
        Ok(Operator { n_qubits: self.n_qubits - 1, m })
    }

    /// Partial trace onto `keep`; kept qubits retain their relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Operator> {
        if keep.is_empty() {
            return Err(Error::Targets("empty keep set".into()));
        }
        check_targets(self.n_qubits, keep)?;
        let mut out = self.clone();
        for q in (0..self.n_qubits).rev().filter(|q| !keep.contains(q)) {
            out = out.fold_qubit(q, [1.0, 1.0])?;
        }
        Ok(out)
    }

    /// X ⊗ |0…0⟩⟨0…0| with `k` fresh qubits appended after the existing ones.
    pub fn append_zero_qubits(&self, k: usize) -> Operator {
        let d = self.dim();
        let nd = d << k;
        let mut m = Matrix::zeros(nd, nd);
        for c in 0..d {
            for r in 0..d {
                m[(r << k, c << k)] = self.m[(r, c)];
            }
        }
        Operator { n_qubits: self.n_qubits + k, m }
    }

    /// Real parts of Tr(Z_s·X) for every Z-string s in binary order.
    pub fn z_string_expectations(&self) -> Vec<f64> {
        let mut v = self.diagonal();
        walsh_hadamard(&mut v);
        v
    }
}

/// Unnormalized in-place Walsh–Hadamard transform:
/// v_s ← Σ_x (−1)^{popcount(x & s)} v_x. Length must be a power of two.
pub fn walsh_hadamard(v: &mut [f64]) {
    assert!(v.len().is_power_of_two(), "length {} is not a power of two", v.len());
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_exact_mut(2 * h) {
            let (a, b) = block.split_at_mut(h);
            for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                let (s, t) = (*x + *y, *x - *y);
                *x = s;
                *y = t;
            }
        }
        h *= 2;
    }
}
