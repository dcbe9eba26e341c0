//! Baseline solvers: local quantum annealing (LQA) on product-state angles,
//! and a dense-statevector implementation of the coherent-state (GCS)
//! ansatz for small instances.
//!
//! Both follow a discretized annealing schedule `s_j = j / M`,
//! `j = 1..=M`, taking one steepest-descent step on
//! `(1 - s) H_i + s γ H_f` at each point (`γ = 1` for GCS).

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{check_angles, AngleVector, FieldCache};
use crate::error::{Error, Result};
use crate::graph::{Bitstring, Graph};
use crate::oracle::{exact_expectation, MAX_STATEVECTOR_QUBITS};
use crate::solver::{round_to_bits, weighted_gradient, BestTracker, RunTrace, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LqaConfig {
    /// Rescaling of the problem Hamiltonian.
    pub gamma: f64,
    /// Gradient step size.
    pub eta: f64,
    /// Schedule length `M`.
    pub steps: usize,
    pub seed: u64,
}

impl Default for LqaConfig {
    fn default() -> Self {
        Self {
            gamma: 0.5,
            eta: crate::solver::LQA_DEFAULT_ETA,
            steps: 1000,
            seed: 0,
        }
    }
}

impl From<&SolverConfig> for LqaConfig {
    fn from(cfg: &SolverConfig) -> Self {
        Self {
            gamma: cfg.gamma,
            eta: cfg.step_size(),
            steps: cfg.sweep_budget.map_or(cfg.max_sweeps, |b| b as usize),
            seed: cfg.seed,
        }
    }
}

impl LqaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 1 {
            return Err(Error::InvalidConfig("LQA needs at least one step".into()));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "eta {} must be positive",
                self.eta
            )));
        }
        if !self.gamma.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "gamma {} must be finite",
                self.gamma
            )));
        }
        Ok(())
    }
}

/// `(1 - s)(-Σ sin 2θ) + s γ Σ w cos 2θ_u cos 2θ_v`.
pub fn lqa_energy(g: &Graph, s: f64, gamma: f64, th: &AngleVector) -> Result<f64> {
    check_angles(g, th)?;
    let coupling: f64 = g
        .edges()
        .iter()
        .map(|e| e.w * (2.0 * th[e.u]).cos() * (2.0 * th[e.v]).cos())
        .sum();
    let transverse: f64 = th.as_slice().iter().map(|t| (2.0 * t).sin()).sum();
    Ok(s * gamma * coupling - (1.0 - s) * transverse)
}

/// Analytic gradient of [`lqa_energy`].
pub fn lqa_gradient(g: &Graph, s: f64, gamma: f64, th: &AngleVector) -> Result<Vec<f64>> {
    check_angles(g, th)?;
    let cache = FieldCache::new(g, th);
    let mut out = vec![0.0; g.n()];
    weighted_gradient(s * gamma, 1.0 - s, th, &cache, &mut out);
    Ok(out)
}

/// Anneals a product state from random angles; the trace has one record
/// per schedule step.
pub fn run_lqa(g: &Graph, cfg: &LqaConfig) -> Result<RunTrace> {
    cfg.validate()?;
    if g.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut th = AngleVector::random(g.n(), &mut rng);
    let mut cache = FieldCache::new(g, &th);
    let mut grad = vec![0.0; g.n()];
    let mut tracker = BestTracker::new(g);
    for step in 1..=cfg.steps {
        let s = step as f64 / cfg.steps as f64;
        weighted_gradient(s * cfg.gamma, 1.0 - s, &th, &cache, &mut grad);
        th.as_mut_slice()
            .par_iter_mut()
            .zip(grad.par_iter())
            .for_each(|(t, d)| *t = (*t - cfg.eta * d).clamp(0.0, FRAC_PI_2));
        cache.rebuild(g, &th);
        tracker.offer(step, round_to_bits(&th), 1);
    }
    Ok(tracker.finish())
}

/// Parameters of `U(y) V(B) U(x) |+⟩^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GcsParams {
    n: usize,
    /// Rotation generators `(x_X, x_Y, x_Z)` of the first layer.
    pub x: Vec<[f64; 3]>,
    /// Rotation generators of the last layer.
    pub y: Vec<[f64; 3]>,
    /// Row-major symmetric coupling matrix with zero diagonal.
    b: Vec<f64>,
}

impl GcsParams {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            x: vec![[0.0; 3]; n],
            y: vec![[0.0; 3]; n],
            b: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coupling(&self, j: usize, k: usize) -> f64 {
        self.b[j * self.n + k]
    }

    /// Sets `B_jk = B_kj = value`; the diagonal stays zero.
    pub fn set_coupling(&mut self, j: usize, k: usize, value: f64) {
        assert_ne!(j, k, "B has a zero diagonal");
        self.b[j * self.n + k] = value;
        self.b[k * self.n + j] = value;
    }

    /// Number of free parameters: `6n + n(n-1)/2`.
    pub fn dim(&self) -> usize {
        6 * self.n + self.n * (self.n - 1) / 2
    }

    /// Free parameters in the order x, y, upper triangle of B.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        out.extend(self.x.iter().flatten());
        out.extend(self.y.iter().flatten());
        for j in 0..self.n {
            for k in (j + 1)..self.n {
                out.push(self.coupling(j, k));
            }
        }
        out
    }

    pub fn from_flat(n: usize, flat: &[f64]) -> Self {
        let mut p = Self::zeros(n);
        assert_eq!(flat.len(), p.dim(), "flat parameter length");
        for j in 0..n {
            p.x[j].copy_from_slice(&flat[3 * j..3 * j + 3]);
            p.y[j].copy_from_slice(&flat[3 * n + 3 * j..3 * n + 3 * j + 3]);
        }
        let mut idx = 6 * n;
        for j in 0..n {
            for k in (j + 1)..n {
                p.set_coupling(j, k, flat[idx]);
                idx += 1;
            }
        }
        p
    }
}

/// `exp(-i (a_X σˣ + a_Y σʸ + a_Z σᶻ))` in closed axis-angle form,
/// row-major.
pub fn rotation_matrix(a: [f64; 3]) -> [[Complex64; 2]; 2] {
    let r = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let (c, k) = if r > 0.0 {
        (r.cos(), r.sin() / r)
    } else {
        (1.0, 1.0)
    };
    let (sx, sy, sz) = (k * a[0], k * a[1], k * a[2]);
    [
        [Complex64::new(c, -sz), Complex64::new(-sy, -sx)],
        [Complex64::new(sy, -sx), Complex64::new(c, sz)],
    ]
}

fn apply_single_qubit(state: &mut [Complex64], qubit: usize, m: &[[Complex64; 2]; 2]) {
    let stride = 1usize << qubit;
    for base in (0..state.len()).step_by(2 * stride) {
        for i in base..base + stride {
            let (a0, a1) = (state[i], state[i + stride]);
            state[i] = m[0][0] * a0 + m[0][1] * a1;
            state[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// Statevector of the GCS ansatz; qubit `j` is bit `j` of the basis index.
pub fn gcs_state(params: &GcsParams) -> Result<Vec<Complex64>> {
    let n = params.n();
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: MAX_STATEVECTOR_QUBITS,
        });
    }
    let dim = 1usize << n;
    let amp = (dim as f64).sqrt().recip();
    let mut state = vec![Complex64::new(amp, 0.0); dim];
    for (j, a) in params.x.iter().enumerate() {
        apply_single_qubit(&mut state, j, &rotation_matrix(*a));
    }
    // exp(-i Σ_{j≠k} B_jk z_j z_k): every unordered pair counted twice.
    let pairs: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|j| ((j + 1)..n).map(move |k| (j, k)))
        .map(|(j, k)| (j, k, params.coupling(j, k)))
        .filter(|&(_, _, b)| b != 0.0)
        .collect();
    if !pairs.is_empty() {
        state.par_iter_mut().enumerate().for_each(|(idx, amp)| {
            let phase: f64 = pairs
                .iter()
                .map(|&(j, k, b)| {
                    let same = ((idx >> j) ^ (idx >> k)) & 1 == 0;
                    if same {
                        2.0 * b
                    } else {
                        -2.0 * b
                    }
                })
                .sum();
            *amp *= Complex64::from_polar(1.0, -phase);
        });
    }
    for (j, a) in params.y.iter().enumerate() {
        apply_single_qubit(&mut state, j, &rotation_matrix(*a));
    }
    Ok(state)
}

/// `⟨Ψ(x, B, y)| (1 - s) H_i + s H_f |Ψ(x, B, y)⟩`.
pub fn gcs_energy(g: &Graph, s: f64, params: &GcsParams) -> Result<f64> {
    if params.n() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: params.n(),
        });
    }
    exact_expectation(g, s, &gcs_state(params)?)
}

/// Finite-difference step of the GCS gradient.
pub const GCS_FD_STEP: f64 = 1e-5;

/// Central-difference gradient of [`gcs_energy`] over the flat parameters.
pub fn gcs_gradient(g: &Graph, s: f64, params: &GcsParams) -> Result<Vec<f64>> {
    let flat = params.to_flat();
    let n = params.n();
    (0..flat.len())
        .into_par_iter()
        .map(|i| {
            let mut probe = flat.clone();
            probe[i] = flat[i] + GCS_FD_STEP;
            let plus = gcs_energy(g, s, &GcsParams::from_flat(n, &probe))?;
            probe[i] = flat[i] - GCS_FD_STEP;
            let minus = gcs_energy(g, s, &GcsParams::from_flat(n, &probe))?;
            Ok((plus - minus) / (2.0 * GCS_FD_STEP))
        })
        .collect()
}

/// `b_j = 0` when `⟨σᶻ_j⟩ ≥ 0`, else 1.
pub fn sign_bits(state: &[Complex64], n: usize) -> Bitstring {
    let mut z = vec![0.0; n];
    for (idx, amp) in state.iter().enumerate() {
        let prob = amp.norm_sqr();
        for (j, zj) in z.iter_mut().enumerate() {
            *zj += if (idx >> j) & 1 == 0 { prob } else { -prob };
        }
    }
    Bitstring::from_bits(z.into_iter().map(|v| u8::from(v < 0.0)).collect())
}

/// Largest instance [`run_gcs`] accepts.
pub const MAX_GCS_QUBITS: usize = 16;

/// Amplitude of the seeded parameter jitter at the start of [`run_gcs`].
pub const GCS_INIT_JITTER: f64 = 0.05;

/// Anneals the GCS ansatz with one steepest-descent step per schedule
/// point. Parameters start near zero, i.e. near `|+⟩^n`.
pub fn run_gcs(g: &Graph, steps: usize, step_size: f64, seed: u64) -> Result<RunTrace> {
    let n = g.n();
    if n > MAX_GCS_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: MAX_GCS_QUBITS,
        });
    }
    if n == 0 || steps == 0 {
        return Err(Error::InvalidConfig("GCS needs vertices and steps".into()));
    }
    if !(step_size > 0.0 && step_size.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "step size {step_size} must be positive"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flat: Vec<f64> = (0..GcsParams::zeros(n).dim())
        .map(|_| rng.gen_range(-GCS_INIT_JITTER..=GCS_INIT_JITTER))
        .collect();
    let mut tracker = BestTracker::new(g);
    for step in 1..=steps {
        let s = step as f64 / steps as f64;
        let grad = gcs_gradient(g, s, &GcsParams::from_flat(n, &flat))?;
        for (p, d) in flat.iter_mut().zip(&grad) {
            *p -= step_size * d;
        }
        let state = gcs_state(&GcsParams::from_flat(n, &flat))?;
        tracker.offer(step, sign_bits(&state, n), 1);
    }
    Ok(tracker.finish())
}
