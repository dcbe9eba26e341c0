//! Quantum-inspired iterated local search (QiILS) and its global-update
//! variant (QiIGS).
//!
//! One iteration relaxes the product state at fixed `λ` until the angle
//! displacement is small relative to the distance from `π/4`, rounds it to
//! a bitstring, keeps the best Ising energy seen so far, and reflects a
//! random fraction `p` of the angles (`θ → π/2 - θ`) to seed the next
//! iteration. QiILS relaxes with closed-form sequential single-site
//! minimizations; QiIGS with synchronous gradient steps. Classical ILS is
//! QiILS at `λ = 1`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{check_lambda, AngleVector, FieldCache};
use crate::error::{Error, Result};
use crate::graph::{cut_from_energy, ising_energy, Bitstring, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Qiils,
    Qiigs,
    Ils,
    Lqa,
    Gcs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Qiils,
        Algorithm::Qiigs,
        Algorithm::Ils,
        Algorithm::Lqa,
        Algorithm::Gcs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Qiils => "qiils",
            Algorithm::Qiigs => "qiigs",
            Algorithm::Ils => "ils",
            Algorithm::Lqa => "lqa",
            Algorithm::Gcs => "gcs",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm {s:?}")))
    }
}

pub const LQA_DEFAULT_ETA: f64 = 0.5;
pub const GCS_DEFAULT_ETA: f64 = 0.1;

/// Algorithm choice and hyperparameters for one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algo: Algorithm,
    /// Interpolation weight of the problem Hamiltonian.
    pub lambda: f64,
    /// Fraction of vertices reflected by each perturbation.
    pub p: f64,
    /// Convergence tolerance of the inner relaxation.
    pub epsilon: f64,
    /// Cap on sweeps (QiIGS: gradient steps) per iteration. For LQA and GCS
    /// this is the schedule length when `sweep_budget` is unset.
    pub max_sweeps: usize,
    pub iterations: usize,
    /// QiIGS gradient step size.
    pub tau: f64,
    pub seed: u64,
    /// Optional cap on the total number of sweeps across all iterations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_budget: Option<u64>,
    /// LQA rescaling of the problem Hamiltonian.
    pub gamma: f64,
    /// LQA and GCS gradient step size; unset means the algorithm's
    /// default ([`LQA_DEFAULT_ETA`] or [`GCS_DEFAULT_ETA`]).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            algo: Algorithm::Qiils,
            lambda: 0.5,
            p: 0.3,
            epsilon: 1e-3,
            max_sweeps: 200,
            iterations: 100,
            tau: 0.1,
            seed: 0,
            sweep_budget: None,
            gamma: 0.5,
            eta: None,
        }
    }
}

impl SolverConfig {
    /// The value of `λ` the run actually uses (ILS pins it to 1).
    pub fn effective_lambda(&self) -> f64 {
        match self.algo {
            Algorithm::Ils => 1.0,
            _ => self.lambda,
        }
    }

    /// The LQA / GCS step size in effect.
    pub fn step_size(&self) -> f64 {
        self.eta.unwrap_or(match self.algo {
            Algorithm::Gcs => GCS_DEFAULT_ETA,
            _ => LQA_DEFAULT_ETA,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.max_sweeps < 1 {
            return bad("max_sweeps must be at least 1".into());
        }
        if self.iterations < 1 {
            return bad("iterations must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.p) {
            return bad(format!("perturbation strength {} outside [0, 1]", self.p));
        }
        if !(self.epsilon >= 0.0) {
            return bad(format!("epsilon {} must be nonnegative", self.epsilon));
        }
        if self.algo == Algorithm::Qiigs && !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad(format!("tau {} must be positive", self.tau));
        }
        if matches!(self.algo, Algorithm::Lqa | Algorithm::Gcs)
            && !(self.step_size() > 0.0 && self.step_size().is_finite())
        {
            return bad(format!("eta {} must be positive", self.step_size()));
        }
        if self.sweep_budget == Some(0) {
            return bad("sweep budget must be at least 1".into());
        }
        check_lambda(self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    /// 1-based iteration (or schedule step) index.
    pub iota: usize,
    pub best_cut: f64,
    pub best_energy: f64,
    /// Sweeps spent in this iteration.
    pub sweeps: usize,
    /// Wall time since the start of the run, in milliseconds.
    pub ms: f64,
}

/// Best-so-far history of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub records: Vec<IterationRecord>,
    pub best_bits: Bitstring,
}

impl RunTrace {
    pub fn best_cut(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.best_cut)
    }

    pub fn best_energy(&self) -> f64 {
        self.records.last().map_or(f64::INFINITY, |r| r.best_energy)
    }

    pub fn total_sweeps(&self) -> u64 {
        self.records.iter().map(|r| r.sweeps as u64).sum()
    }

    /// Equality on everything except wall times.
    pub fn same_outcome(&self, other: &RunTrace) -> bool {
        self.best_bits == other.best_bits
            && self.records.len() == other.records.len()
            && self.records.iter().zip(&other.records).all(|(a, b)| {
                a.iota == b.iota
                    && a.best_cut == b.best_cut
                    && a.best_energy == b.best_energy
                    && a.sweeps == b.sweeps
            })
    }
}

/// Keeps the lowest-energy bitstring seen and emits trace records.
pub(crate) struct BestTracker<'g> {
    graph: &'g Graph,
    start: Instant,
    best_energy: f64,
    best_bits: Bitstring,
    records: Vec<IterationRecord>,
}

impl<'g> BestTracker<'g> {
    pub(crate) fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            start: Instant::now(),
            best_energy: f64::INFINITY,
            best_bits: Bitstring::zeros(graph.n()),
            records: Vec::new(),
        }
    }

    pub(crate) fn offer(&mut self, iota: usize, bits: Bitstring, sweeps: usize) {
        let energy = ising_energy(self.graph, &bits).expect("bitstring sized by the graph");
        if energy < self.best_energy {
            self.best_energy = energy;
            self.best_bits = bits;
        }
        self.records.push(IterationRecord {
            iota,
            best_cut: cut_from_energy(self.graph, self.best_energy),
            best_energy: self.best_energy,
            sweeps,
            ms: self.start.elapsed().as_secs_f64() * 1e3,
        });
    }

    pub(crate) fn finish(self) -> RunTrace {
        RunTrace {
            records: self.records,
            best_bits: self.best_bits,
        }
    }
}

/// Minimizer of `A cos 2θ - B sin 2θ` over `θ`: `π/4 + atan2(A, B) / 2`.
///
/// For `A = B = 0` every angle is optimal; [`sweep`] treats that case
/// separately.
#[inline]
pub fn update_angle(a: f64, b: f64) -> f64 {
    FRAC_PI_4 + 0.5 * a.atan2(b)
}

#[inline]
fn nearest_basis_angle(theta: f64) -> f64 {
    if theta <= FRAC_PI_4 {
        0.0
    } else {
        FRAC_PI_2
    }
}

/// Displacement statistics of one relaxation step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStats {
    /// `max_j |θ_j^new - θ_j|`.
    pub max_delta: f64,
    /// `Σ_j |θ_j^new - π/4|`.
    pub basis_distance: f64,
}

/// One Gauss-Seidel pass over the vertices in ascending order; each update
/// sees the angles already changed earlier in the pass.
pub fn sweep(g: &Graph, lambda: f64, th: &mut AngleVector, cache: &mut FieldCache) -> StepStats {
    let transverse = 1.0 - lambda;
    let mut max_delta = 0.0f64;
    let mut basis_distance = 0.0;
    for j in 0..g.n() {
        let old = th[j];
        let field = lambda * cache.field(j);
        let new = if field == 0.0 && transverse == 0.0 {
            // Flat one-site energy; settle on the basis angle the rounding
            // would pick anyway.
            nearest_basis_angle(old)
        } else {
            update_angle(field, transverse)
        };
        if new != old {
            th[j] = new;
            cache.set_angle(g, j, new);
            max_delta = max_delta.max((new - old).abs());
        }
        basis_distance += (new - FRAC_PI_4).abs();
    }
    StepStats {
        max_delta,
        basis_distance,
    }
}

/// `max_delta < (ε / n) · basis_distance`, or an exact fixed point.
pub fn converged(max_delta: f64, basis_distance: f64, epsilon: f64, n: usize) -> bool {
    max_delta == 0.0 || max_delta < epsilon / n as f64 * basis_distance
}

/// `b_j = 0` for `θ_j ≤ π/4`, else 1.
pub fn round_to_bits(th: &AngleVector) -> Bitstring {
    Bitstring::from_bits(
        th.as_slice()
            .iter()
            .map(|&t| u8::from(t > FRAC_PI_4))
            .collect(),
    )
}

/// Reflects `round(p·n)` distinct, uniformly chosen angles through `π/4`
/// and returns the chosen vertices.
pub fn perturb<R: Rng + ?Sized>(th: &mut AngleVector, p: f64, rng: &mut R) -> Vec<usize> {
    let n = th.len();
    let count = ((p * n as f64).round() as usize).min(n);
    let chosen = index::sample(rng, n, count).into_vec();
    reflect(th, &chosen);
    chosen
}

/// `θ_j → π/2 - θ_j` on the given vertices.
pub fn reflect(th: &mut AngleVector, vertices: &[usize]) {
    for &j in vertices {
        th[j] = FRAC_PI_2 - th[j];
    }
}

/// `∂E/∂θ_j = -2 α a_j sin 2θ_j - 2 β cos 2θ_j`, the gradient of
/// `α Σ w cos 2θ_u cos 2θ_v - β Σ sin 2θ_j`. QiIGS uses `α = λ`,
/// `β = 1 - λ`.
pub(crate) fn weighted_gradient(
    alpha: f64,
    beta: f64,
    th: &AngleVector,
    cache: &FieldCache,
    out: &mut [f64],
) {
    let fields = cache.fields();
    let cos2 = cache.cos2();
    out.par_iter_mut()
        .zip(th.as_slice().par_iter())
        .enumerate()
        .for_each(|(j, (g, t))| {
            *g = -2.0 * alpha * fields[j] * (2.0 * t).sin() - 2.0 * beta * cos2[j];
        });
}

/// Energy gradient with respect to every angle, evaluated on the current
/// vector, in parallel over vertices.
pub fn gradient(g: &Graph, lambda: f64, th: &AngleVector, cache: &FieldCache) -> Vec<f64> {
    debug_assert_eq!(g.n(), th.len());
    let mut out = vec![0.0; th.len()];
    weighted_gradient(lambda, 1.0 - lambda, th, cache, &mut out);
    out
}

/// Single-threaded reference for [`gradient`].
pub fn gradient_serial(g: &Graph, lambda: f64, th: &AngleVector, cache: &FieldCache) -> Vec<f64> {
    (0..g.n())
        .map(|j| {
            -2.0 * lambda * cache.field(j) * (2.0 * th[j]).sin()
                - 2.0 * (1.0 - lambda) * cache.cos2()[j]
        })
        .collect()
}

/// Jacobi step `θ_j ← clamp(θ_j - τ ∂E/∂θ_j, 0, π/2)`, in parallel. The
/// caller must rebuild the field cache afterwards.
pub fn global_step(th: &mut AngleVector, grad: &[f64], tau: f64) -> StepStats {
    assert_eq!(th.len(), grad.len(), "gradient length");
    let max_delta = th
        .as_mut_slice()
        .par_iter_mut()
        .zip(grad.par_iter())
        .map(|(t, g)| step_one(t, *g, tau).0)
        .reduce(|| 0.0, f64::max);
    // Summed in index order so the result does not depend on how the
    // parallel part was split.
    let basis_distance: f64 = th.as_slice().iter().map(|t| (t - FRAC_PI_4).abs()).sum();
    StepStats {
        max_delta,
        basis_distance,
    }
}

/// Single-threaded reference for [`global_step`].
pub fn global_step_serial(th: &mut AngleVector, grad: &[f64], tau: f64) -> StepStats {
    assert_eq!(th.len(), grad.len(), "gradient length");
    let mut max_delta = 0.0f64;
    let mut basis_distance = 0.0;
    for (t, g) in th.as_mut_slice().iter_mut().zip(grad) {
        let (d, b) = step_one(t, *g, tau);
        max_delta = max_delta.max(d);
        basis_distance += b;
    }
    StepStats {
        max_delta,
        basis_distance,
    }
}

#[inline]
fn step_one(t: &mut f64, g: f64, tau: f64) -> (f64, f64) {
    let new = (*t - tau * g).clamp(0.0, FRAC_PI_2);
    let delta = (new - *t).abs();
    *t = new;
    (delta, (new - FRAC_PI_4).abs())
}

/// Sequential sweeps until convergence or `max_sweeps`; returns the sweeps
/// spent.
pub fn relax_sequential(
    g: &Graph,
    lambda: f64,
    epsilon: f64,
    max_sweeps: usize,
    th: &mut AngleVector,
    cache: &mut FieldCache,
) -> usize {
    for s in 1..=max_sweeps {
        let stats = sweep(g, lambda, th, cache);
        if converged(stats.max_delta, stats.basis_distance, epsilon, g.n()) {
            return s;
        }
    }
    max_sweeps
}

/// Gradient steps until convergence or `max_steps`; returns the steps
/// spent.
pub fn relax_gradient(
    g: &Graph,
    lambda: f64,
    tau: f64,
    epsilon: f64,
    max_steps: usize,
    th: &mut AngleVector,
    cache: &mut FieldCache,
) -> usize {
    let mut grad = vec![0.0; g.n()];
    for s in 1..=max_steps {
        weighted_gradient(lambda, 1.0 - lambda, th, cache, &mut grad);
        let stats = global_step(th, &grad, tau);
        cache.rebuild(g, th);
        if converged(stats.max_delta, stats.basis_distance, epsilon, g.n()) {
            return s;
        }
    }
    max_steps
}

/// Runs one seeded trial of the configured algorithm.
///
/// QiILS, QiIGS and ILS are driven here; LQA and GCS are dispatched to
/// [`crate::baselines`].
pub fn run(g: &Graph, cfg: &SolverConfig) -> Result<RunTrace> {
    cfg.validate()?;
    match cfg.algo {
        Algorithm::Lqa => {
            return crate::baselines::run_lqa(g, &crate::baselines::LqaConfig::from(cfg))
        }
        Algorithm::Gcs => {
            let steps = cfg.sweep_budget.map_or(cfg.max_sweeps, |b| b as usize);
            return crate::baselines::run_gcs(g, steps, cfg.step_size(), cfg.seed);
        }
        _ => {}
    }
    if g.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }

    let lambda = cfg.effective_lambda();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut th = AngleVector::random(g.n(), &mut rng);
    let mut cache = FieldCache::new(g, &th);
    let mut tracker = BestTracker::new(g);
    let mut spent: u64 = 0;

    for iota in 1..=cfg.iterations {
        let cap = match cfg.sweep_budget {
            Some(budget) => (budget - spent).min(cfg.max_sweeps as u64) as usize,
            None => cfg.max_sweeps,
        };
        let sweeps = match cfg.algo {
            Algorithm::Qiigs => {
                relax_gradient(g, lambda, cfg.tau, cfg.epsilon, cap, &mut th, &mut cache)
            }
            _ => relax_sequential(g, lambda, cfg.epsilon, cap, &mut th, &mut cache),
        };
        spent += sweeps as u64;
        tracker.offer(iota, round_to_bits(&th), sweeps);

        let budget_left = cfg.sweep_budget.is_none_or(|b| spent < b);
        if iota == cfg.iterations || !budget_left {
            break;
        }
        let old: Vec<f64> = th.as_slice().to_vec();
        for j in perturb(&mut th, cfg.p, &mut rng) {
            cache.update(g, j, old[j], th[j]);
        }
    }
    Ok(tracker.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{local_field, ps_energy};
    use crate::graph::gen_regular;

    #[test]
    fn step_size_defaults_per_algorithm() {
        let mut cfg = SolverConfig {
            algo: Algorithm::Gcs,
            ..SolverConfig::default()
        };
        assert_eq!(cfg.step_size(), 0.1);
        cfg.algo = Algorithm::Lqa;
        assert_eq!(cfg.step_size(), 0.5);
        cfg.eta = Some(0.2);
        assert_eq!(cfg.step_size(), 0.2);
    }

    #[test]
    fn update_angle_examples() {
        assert!((update_angle(0.0, 1.0) - FRAC_PI_4).abs() < 1e-15);
        assert!((update_angle(0.5, 0.0) - FRAC_PI_2).abs() < 1e-15);
        assert!((update_angle(-0.5, 0.0)).abs() < 1e-15);
        assert!((update_angle(0.5, 0.5) - 3.0 * std::f64::consts::PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn zero_lambda_settles_at_quarter_angles() {
        let g = gen_regular(10, 3, true, 0).unwrap();
        let mut th = AngleVector::random(10, &mut ChaCha8Rng::seed_from_u64(1));
        let mut cache = FieldCache::new(&g, &th);
        sweep(&g, 0.0, &mut th, &mut cache);
        assert!(th.as_slice().iter().all(|&t| (t - FRAC_PI_4).abs() < 1e-15));
        let second = sweep(&g, 0.0, &mut th, &mut cache);
        assert_eq!(second.max_delta, 0.0);
    }

    #[test]
    fn convergence_examples() {
        assert!(converged(0.0, 0.0, 1e-3, 10));
        assert!(converged(0.0, 5.0, 1e-3, 10));
        let n = 8;
        assert!(converged(1e-9, n as f64 * FRAC_PI_4, 1e-3, n));
        assert!(!converged(0.1, n as f64 * FRAC_PI_4, 1e-3, n));
        // strict inequality on the tolerance itself
        assert!(!converged(1e-3 * FRAC_PI_4, n as f64 * FRAC_PI_4, 1e-3, n));
    }

    #[test]
    fn rounding_examples() {
        let th = AngleVector::new(vec![FRAC_PI_4, 0.0, FRAC_PI_2, FRAC_PI_4 + 1e-12]);
        assert_eq!(round_to_bits(&th).as_slice(), &[0, 0, 1, 1]);
    }

    #[test]
    fn perturb_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let start = AngleVector::random(20, &mut rng);

        let mut th = start.clone();
        assert!(perturb(&mut th, 0.0, &mut rng).is_empty());
        assert_eq!(th, start);

        let mut th = start.clone();
        let chosen = perturb(&mut th, 0.3, &mut rng);
        assert_eq!(chosen.len(), 6);
        let mut distinct = chosen.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), 6);
        for j in 0..20 {
            if !chosen.contains(&j) {
                assert_eq!(th[j], start[j]);
            }
        }
        reflect(&mut th, &chosen);
        for j in 0..20 {
            assert!((th[j] - start[j]).abs() < 1e-15);
        }

        let mut zeros = AngleVector::uniform(7, 0.0);
        perturb(&mut zeros, 1.0, &mut rng);
        assert!(zeros.as_slice().iter().all(|&t| t == FRAC_PI_2));
    }

    #[test]
    fn gradient_vanishes_at_uniform_quarter_angles() {
        let g = gen_regular(10, 3, true, 2).unwrap();
        let th = AngleVector::uniform(10, FRAC_PI_4);
        let cache = FieldCache::new(&g, &th);
        for d in gradient(&g, 0.6, &th, &cache) {
            assert!(d.abs() < 1e-15);
        }
    }

    #[test]
    fn gradient_at_zero_lambda_and_zero_angle() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        let th = AngleVector::new(vec![0.0, 0.9]);
        let cache = FieldCache::new(&g, &th);
        assert_eq!(gradient(&g, 0.0, &th, &cache)[0], -2.0);
    }

    #[test]
    fn zero_gradient_step_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let start = AngleVector::random(30, &mut rng);
        let mut th = start.clone();
        let stats = global_step(&mut th, &vec![0.0; 30], 0.1);
        assert_eq!(th, start);
        assert_eq!(stats.max_delta, 0.0);
    }

    #[test]
    fn small_gradient_step_lowers_energy() {
        let g = gen_regular(24, 3, true, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut th = AngleVector::random(24, &mut rng);
        let cache = FieldCache::new(&g, &th);
        let before = ps_energy(&g, 0.4, &th).unwrap();
        let grad = gradient(&g, 0.4, &th, &cache);
        global_step(&mut th, &grad, 1e-4);
        assert!(ps_energy(&g, 0.4, &th).unwrap() < before);
    }

    #[test]
    fn sweep_keeps_cache_exact() {
        let g = gen_regular(40, 3, true, 4).unwrap();
        let mut th = AngleVector::random(40, &mut ChaCha8Rng::seed_from_u64(4));
        let mut cache = FieldCache::new(&g, &th);
        for _ in 0..5 {
            sweep(&g, 0.55, &mut th, &mut cache);
        }
        for j in 0..40 {
            assert!((cache.field(j) - local_field(&g, &th, j)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_edge_is_solved_in_the_first_iteration() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        for seed in 0..20 {
            let cfg = SolverConfig {
                lambda: 0.5,
                iterations: 1,
                seed,
                ..SolverConfig::default()
            };
            let trace = run(&g, &cfg).unwrap();
            assert_eq!(trace.records.len(), 1);
            assert_eq!(trace.best_cut(), 1.0);
        }
    }

    #[test]
    fn sweep_budget_caps_total_work() {
        let g = gen_regular(30, 3, false, 1).unwrap();
        let cfg = SolverConfig {
            iterations: usize::MAX,
            sweep_budget: Some(57),
            ..SolverConfig::default()
        };
        let trace = run(&g, &cfg).unwrap();
        assert_eq!(trace.total_sweeps(), 57);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        let bad = [
            SolverConfig {
                max_sweeps: 0,
                ..SolverConfig::default()
            },
            SolverConfig {
                iterations: 0,
                ..SolverConfig::default()
            },
            SolverConfig {
                lambda: 1.2,
                ..SolverConfig::default()
            },
            SolverConfig {
                p: -0.1,
                ..SolverConfig::default()
            },
            SolverConfig {
                algo: Algorithm::Qiigs,
                tau: 0.0,
                ..SolverConfig::default()
            },
        ];
        for cfg in bad {
            assert!(run(&g, &cfg).is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("sa".parse::<Algorithm>().is_err());
    }
}
