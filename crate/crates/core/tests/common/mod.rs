//! Test-only reference implementations. Nothing here calls the library's
//! simulation kernels, so agreement with them is an independent check.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use telecut::qsim::{DensityMatrix, Matrix, Operator};

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Statevector over `n` qubits, qubit 0 the most significant bit.
#[derive(Clone, Debug)]
pub struct Sv {
    pub n: usize,
    pub amp: Vec<C>,
}

impl Sv {
    pub fn zero(n: usize) -> Self {
        let mut amp = vec![C::new(0.0, 0.0); 1 << n];
        amp[0] = c(1.0);
        Sv { n, amp }
    }

    pub fn from_amps(amp: Vec<C>) -> Self {
        let n = amp.len().trailing_zeros() as usize;
        Sv { n, amp }
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn apply1(&mut self, q: usize, m: [[C; 2]; 2]) {
        let b = self.bit(q);
        for i in 0..self.amp.len() {
            if i & b == 0 {
                let (a0, a1) = (self.amp[i], self.amp[i | b]);
                self.amp[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amp[i | b] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn x(&mut self, q: usize) {
        self.apply1(q, [[c(0.0), c(1.0)], [c(1.0), c(0.0)]]);
    }

    pub fn z(&mut self, q: usize) {
        self.apply1(q, [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]]);
    }

    pub fn h(&mut self, q: usize) {
        let r = c(std::f64::consts::FRAC_1_SQRT_2);
        self.apply1(q, [[r, r], [r, -r]]);
    }

    pub fn cnot(&mut self, ctl: usize, tgt: usize) {
        let (bc, bt) = (self.bit(ctl), self.bit(tgt));
        for i in 0..self.amp.len() {
            if i & bc != 0 && i & bt == 0 {
                self.amp.swap(i, i | bt);
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let (ba, bb) = (self.bit(a), self.bit(b));
        for i in 0..self.amp.len() {
            if i & ba != 0 && i & bb != 0 {
                self.amp[i] = -self.amp[i];
            }
        }
    }

    /// Projects qubit `q` onto `outcome`; returns the Born probability and
    /// the renormalized post-measurement state.
    pub fn project(&self, q: usize, outcome: usize) -> (f64, Sv) {
        let b = self.bit(q);
        let mut out = self.clone();
        let mut p = 0.0;
        for (i, a) in out.amp.iter_mut().enumerate() {
            if ((i & b != 0) as usize) != outcome {
                *a = c(0.0);
            } else {
                p += a.norm_sqr();
            }
        }
        if p > 0.0 {
            let s = 1.0 / p.sqrt();
            out.amp.iter_mut().for_each(|a| *a *= s);
        }
        (p, out)
    }

    /// |ψ⟩⟨ψ| reduced to the first `k` qubits.
    pub fn reduced_leading(&self, k: usize) -> Matrix {
        let d = 1 << k;
        let rest = 1 << (self.n - k);
        Matrix::from_fn(d, d, |r, col| (0..rest).map(|e| self.amp[r * rest + e] * self.amp[col * rest + e].conj()).sum())
    }

    pub fn kron(&self, other: &Sv) -> Sv {
        let amp = self.amp.iter().flat_map(|a| other.amp.iter().map(move |b| a * b)).collect();
        Sv { n: self.n + other.n, amp }
    }
}

/// Telegate with explicit mid-circuit measurements and classical feedforward
/// on qubits (q1, q2, c1, c2) = (0, 1, 2, 3). `comm` is the pair's pure state
/// before the X frame on c1. Returns the averaged output on (q1, q2).
pub fn telegate_trajectories(input: &[C], comm: &[C]) -> Matrix {
    let mut psi = Sv::from_amps(input.to_vec()).kron(&Sv::from_amps(comm.to_vec()));
    psi.x(2);
    psi.cnot(0, 2);
    let mut out = Matrix::zeros(4, 4);
    for m1 in 0..2 {
        let (p1, mut a) = psi.project(2, m1);
        if p1 < 1e-300 {
            continue;
        }
        if m1 == 1 {
            a.x(3);
        }
        a.cnot(3, 1);
        a.h(3);
        for m2 in 0..2 {
            let (p2, mut b) = a.project(3, m2);
            if p2 < 1e-300 {
                continue;
            }
            if m2 == 1 {
                b.z(0);
            }
            out += b.reduced_leading(2) * c(p1 * p2);
        }
    }
    out
}

/// Closed-form σ(N_add) entries, typed out independently of the library:
/// returns (p00, p_mid, coherence, p11) with p_mid the |01⟩ and |10⟩
/// populations and coherence the |01⟩⟨10| element.
pub fn sigma_closed_form(n_add: f64) -> (f64, f64, f64, f64) {
    let (eta, b, t, pe) = (0.5f64, 1e7f64, 1e-6f64, 0.5f64);
    let pd = (1.0 - (-eta * b * n_add * t / 2.0).exp()).powi(2);
    let l2 = (1.0 - eta).powi(2);
    let c00 = (1.0 - pe * pe) * 2.0 * pd * (1.0 - pd) * ((1.0 - l2) * (1.0 - pd) + l2 * 2.0 * pd * (1.0 - pd));
    let cpsi = 2.0 * pe * (1.0 - pe) * eta * eta * (1.0 - pd).powi(2);
    let c01 = (eta * (1.0 - pd) + (1.0 - eta) * (1.0 - pd) * 2.0 * pd).powi(2) - eta * eta * (1.0 - pd).powi(2);
    let c11 = pe * pe * ((1.0 - l2) + l2 * 2.0 * pd) * (1.0 - pd).powi(2) * 2.0 * pd;
    let norm = c00 + cpsi + 2.0 * c01 + c11;
    (c00 / norm, (c01 + cpsi / 2.0) / norm, cpsi / 2.0 / norm, c11 / norm)
}

/// Pure-state mixture equal to σ(N_add): (weight, amplitudes on c1 c2).
pub fn sigma_components(n_add: f64) -> Vec<(f64, [C; 4])> {
    let (p00, mid, coh, p11) = sigma_closed_form(n_add);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0);
    let diag01 = mid - coh;
    vec![
        (p00, [c(1.0), z, z, z]),
        (2.0 * coh, [z, c(r), c(r), z]),
        (diag01, [z, c(1.0), z, z]),
        (diag01, [z, z, c(1.0), z]),
        (p11, [z, z, z, c(1.0)]),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C> {
    let v: Vec<C> = (0..dim).map(|_| C::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

/// Full-rank random density matrix A·A† / Tr.
pub fn random_density(n: usize, seed: u64) -> DensityMatrix {
    let mut r = rng(seed);
    let d = 1 << n;
    let a = Matrix::from_fn(d, d, |_, _| C::new(StandardNormal.sample(&mut r), StandardNormal.sample(&mut r)));
    let m = &a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::new(Operator::from_matrix(m / tr).unwrap()).unwrap()
}

/// Haar-ish random unitary from the QR factor of a complex Gaussian matrix.
pub fn random_unitary(k: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    let d = 1 << k;
    let a = Matrix::from_fn(d, d, |_, _| C::new(StandardNormal.sample(&mut r), StandardNormal.sample(&mut r)));
    a.qr().q()
}

pub fn max_abs(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
