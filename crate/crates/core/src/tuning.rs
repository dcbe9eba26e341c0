//! Selecting `λ` by maximizing the rate at which the mean best energy
//! improves per iteration, and the hyperparameter exploration harness.
//!
//! The improvement rate is the decay constant `m` of a least-squares fit
//! `E(ι) ≈ c0 · exp(-m ι) + c1` to the best-so-far energy averaged over
//! seeds (and instances). A golden-section search maximizes `m` over `λ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{run, Algorithm, RunTrace, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub c0: f64,
    pub c1: f64,
    /// Decay rate per iteration.
    pub m: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    pub converged: bool,
}

const FIT_MAX_ITER: usize = 200;

/// Fits `E(ι) = c0 · exp(-m ι) + c1` by damped Gauss-Newton.
///
/// Starts from `c1` = last value, `c0` = first minus last, and `m` from a
/// log-linear fit of `E - c1`. A fit that fails to converge within 200
/// iterations is returned with `m = 0`, `converged = false` and an
/// infinite residual.
pub fn fit_decay(curve: &[(f64, f64)]) -> Result<DecayFit> {
    if curve.len() < 4 {
        return Err(Error::Degenerate(format!(
            "decay fit needs at least 4 points, got {}",
            curve.len()
        )));
    }
    if curve.iter().any(|(i, e)| !i.is_finite() || !e.is_finite()) {
        return Err(Error::Degenerate("curve has non-finite values".into()));
    }
    let first = curve[0].1;
    let last = curve[curve.len() - 1].1;
    let scale = curve.iter().map(|(_, e)| e.abs()).fold(0.0, f64::max);
    let spread = curve
        .iter()
        .map(|(_, e)| (e - first).abs())
        .fold(0.0, f64::max);
    if spread <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Degenerate("constant curve".into()));
    }

    // Work in t = ι - ι_0 so that c0 is the amplitude at the first point.
    let origin = curve[0].0;
    let pts: Vec<(f64, f64)> = curve.iter().map(|&(i, e)| (i - origin, e)).collect();
    let span = pts[pts.len() - 1].0.max(f64::MIN_POSITIVE);

    let mut params = [first - last, last, initial_rate(&pts, last, span)];
    let mut sse = sum_sq(&pts, params);
    let mut converged = false;
    for _ in 0..FIT_MAX_ITER {
        let Some(step) = gauss_newton_step(&pts, params) else {
            break;
        };
        let mut accepted = false;
        let mut scale_step = 1.0;
        for _ in 0..40 {
            let trial = [
                params[0] + scale_step * step[0],
                params[1] + scale_step * step[1],
                params[2] + scale_step * step[2],
            ];
            let trial_sse = sum_sq(&pts, trial);
            if trial_sse.is_finite() && trial_sse <= sse {
                let gain = sse - trial_sse;
                params = trial;
                sse = trial_sse;
                accepted = true;
                let small_step = step.iter().zip(&params).all(|(s, p)| {
                    (scale_step * s).abs() <= 1e-12 * p.abs().max(1e-12 * scale.max(1.0))
                });
                if gain <= 1e-15 * sse.max(f64::MIN_POSITIVE) || small_step {
                    converged = true;
                }
                break;
            }
            scale_step *= 0.5;
        }
        if !accepted {
            // No descent along the Gauss-Newton direction: stationary.
            converged = true;
        }
        if converged {
            break;
        }
    }
    if !converged || !params.iter().all(|p| p.is_finite()) {
        return Ok(DecayFit {
            c0: params[0],
            c1: params[1],
            m: 0.0,
            residual: f64::INFINITY,
            converged: false,
        });
    }
    let [c0, c1, m] = params;
    Ok(DecayFit {
        c0: c0 * (m * origin).exp(),
        c1,
        m,
        residual: (sse / pts.len() as f64).sqrt(),
        converged: true,
    })
}

fn initial_rate(pts: &[(f64, f64)], c1: f64, span: f64) -> f64 {
    let sign = (pts[0].1 - c1).signum();
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .map(|&(t, e)| (t, (e - c1) * sign))
        .filter(|&(_, d)| d > 0.0)
        .map(|(t, d)| (t, d.ln()))
        .collect();
    let fallback = 3.0 / span;
    if logs.len() < 2 {
        return fallback;
    }
    let k = logs.len() as f64;
    let mt = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let ml = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mt) * (p.1 - ml)).sum();
    let slope = sxy / sxx;
    if slope.is_finite() && slope < 0.0 {
        -slope
    } else {
        fallback
    }
}

fn sum_sq(pts: &[(f64, f64)], [c0, c1, m]: [f64; 3]) -> f64 {
    pts.iter()
        .map(|&(t, e)| (c0 * (-m * t).exp() + c1 - e).powi(2))
        .sum()
}

fn gauss_newton_step(pts: &[(f64, f64)], [c0, c1, m]: [f64; 3]) -> Option<[f64; 3]> {
    let mut jtj = [[0.0f64; 3]; 3];
    let mut jtr = [0.0f64; 3];
    for &(t, e) in pts {
        let ex = (-m * t).exp();
        let r = c0 * ex + c1 - e;
        let jac = [ex, 1.0, -c0 * t * ex];
        for a in 0..3 {
            jtr[a] += jac[a] * r;
            for b in 0..3 {
                jtj[a][b] += jac[a] * jac[b];
            }
        }
    }
    solve3(jtj, [-jtr[0], -jtr[1], -jtr[2]])
}

/// Gaussian elimination with partial pivoting on a 3x3 system.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let norm = a.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-300_f64.max(1e-15 * norm) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = ((row + 1)..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// `(√5 - 1) / 2`, the golden-ratio conjugate.
pub const GOLDEN_CONJUGATE: f64 = 0.618_033_988_749_894_9;

/// Number of bracket reductions needed to shrink `hi - lo` below `tol`.
pub fn gss_iterations(lo: f64, hi: f64, tol: f64) -> usize {
    let ratio = (hi - lo) / tol;
    if ratio <= 1.0 {
        return 0;
    }
    let mut k = (ratio.ln() / GOLDEN_CONJUGATE.recip().ln()).ceil() as usize;
    // Guard the ceiling against rounding in the logarithms.
    while k > 0 && (hi - lo) * GOLDEN_CONJUGATE.powi(k as i32 - 1) <= tol {
        k -= 1;
    }
    while (hi - lo) * GOLDEN_CONJUGATE.powi(k as i32) > tol {
        k += 1;
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GssOutcome {
    /// Midpoint of the final bracket.
    pub argmax: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Golden-section search for the maximizer of `f` on `[lo, hi]`.
///
/// Performs exactly [`gss_iterations`] reductions, each shrinking the
/// bracket by the golden-ratio conjugate, using one new evaluation per
/// reduction after the first two. For a non-unimodal `f` the result is a
/// local maximizer. NaN values compare below every number.
pub fn gss<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> GssOutcome {
    assert!(lo < hi, "empty bracket [{lo}, {hi}]");
    assert!(tol > 0.0, "tolerance must be positive");
    let iterations = gss_iterations(lo, hi, tol);
    if iterations == 0 {
        return GssOutcome {
            argmax: 0.5 * (lo + hi),
            iterations: 0,
            evaluations: 0,
        };
    }
    let key = |v: f64| if v.is_nan() { f64::NEG_INFINITY } else { v };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN_CONJUGATE * (b - a);
    let mut d = a + GOLDEN_CONJUGATE * (b - a);
    let mut fc = key(f(c));
    let mut fd = key(f(d));
    let mut evaluations = 2;
    for it in 0..iterations {
        let last = it + 1 == iterations;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN_CONJUGATE * (b - a);
            if !last {
                fc = key(f(c));
                evaluations += 1;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN_CONJUGATE * (b - a);
            if !last {
                fd = key(f(d));
                evaluations += 1;
            }
        }
    }
    GssOutcome {
        argmax: 0.5 * (a + b),
        iterations,
        evaluations,
    }
}

/// Runs `trials` seeds on every instance and returns all traces, ordered
/// by instance then trial. Trial `t` uses seed `cfg.seed + t`.
pub fn run_ensemble(
    instances: &[Graph],
    cfg: &SolverConfig,
    trials: usize,
) -> Result<Vec<RunTrace>> {
    let jobs: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..trials).map(move |t| (i, t)))
        .collect();
    jobs.par_iter()
        .map(|&(i, t)| {
            let cfg = SolverConfig {
                seed: cfg.seed.wrapping_add(t as u64),
                ..cfg.clone()
            };
            run(&instances[i], &cfg)
        })
        .collect()
}

/// Pointwise mean of `value(trace, record index)` over traces; shorter
/// traces are padded with their last record.
fn pointwise<F: Fn(&RunTrace, usize) -> f64>(traces: &[RunTrace], value: F) -> Vec<Vec<f64>> {
    let len = traces.iter().map(|t| t.records.len()).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            traces
                .iter()
                .map(|t| value(t, i.min(t.records.len() - 1)))
                .collect()
        })
        .collect()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard error of the mean (zero for a single sample).
fn std_error(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (var / xs.len() as f64).sqrt()
}

/// One `λ` evaluated during tuning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub lambda: f64,
    /// Mean best-so-far energy per iteration.
    pub curve: Vec<f64>,
    pub fit: Option<DecayFit>,
    pub mean_final_energy: f64,
}

impl Probe {
    pub fn decay_rate(&self) -> Option<f64> {
        self.fit.filter(|f| f.converged).map(|f| f.m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneReport {
    pub lambda: f64,
    /// Every distinct probe, sorted by `λ`.
    pub probes: Vec<Probe>,
    /// True when some probe could not be fitted and the result fell back to
    /// the probe with the lowest mean final energy.
    pub fallback: bool,
}

/// Default bracket for `λ`; the endpoints 0 and 1 are degenerate.
pub const LAMBDA_BRACKET: (f64, f64) = (0.05, 0.95);

/// Evaluates one `λ`: mean best-energy curve over instances and trials,
/// and its decay fit.
pub fn probe_lambda(
    instances: &[Graph],
    base: &SolverConfig,
    trials: usize,
    lambda: f64,
) -> Result<Probe> {
    let cfg = SolverConfig {
        lambda,
        ..base.clone()
    };
    let traces = run_ensemble(instances, &cfg, trials)?;
    let curve: Vec<f64> = pointwise(&traces, |t, i| t.records[i].best_energy)
        .iter()
        .map(|xs| mean(xs))
        .collect();
    let points: Vec<(f64, f64)> = curve
        .iter()
        .enumerate()
        .map(|(i, &e)| ((i + 1) as f64, e))
        .collect();
    let fit = fit_decay(&points).ok();
    Ok(Probe {
        lambda,
        mean_final_energy: *curve.last().unwrap_or(&f64::INFINITY),
        curve,
        fit,
    })
}

/// Golden-section search over `λ ∈ [lo, hi]` for the largest fitted decay
/// rate of the mean best-energy curve.
///
/// Deterministic given `base.seed`: every probe reuses the same trial
/// seeds. When any probe has no usable fit the probe with the lowest mean
/// final energy is returned instead.
pub fn tune_lambda(
    instances: &[Graph],
    base: &SolverConfig,
    trials: usize,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<TuneReport> {
    if trials < 1 {
        return Err(Error::InvalidConfig(
            "tuning needs at least one trial".into(),
        ));
    }
    if instances.is_empty() {
        return Err(Error::InvalidConfig(
            "tuning needs at least one instance".into(),
        ));
    }
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return Err(Error::InvalidConfig(format!(
            "bad lambda bracket [{lo}, {hi}]"
        )));
    }
    let base = SolverConfig {
        algo: Algorithm::Qiils,
        ..base.clone()
    };
    base.validate()?;

    let mut probes: BTreeMap<u64, Probe> = BTreeMap::new();
    let mut failure = None;
    let mut evaluate = |lambda: f64| -> f64 {
        if let Some(p) = probes.get(&lambda.to_bits()) {
            return p.decay_rate().unwrap_or(f64::NAN);
        }
        match probe_lambda(instances, &base, trials, lambda) {
            Ok(p) => {
                let rate = p.decay_rate().unwrap_or(f64::NAN);
                probes.insert(lambda.to_bits(), p);
                rate
            }
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };

    let mut chosen = if lo == hi {
        evaluate(lo);
        lo
    } else {
        let tol = tol.min(hi - lo);
        gss(&mut evaluate, lo, hi, tol).argmax
    };
    if let Some(e) = failure {
        return Err(e);
    }

    let mut probes: Vec<Probe> = probes.into_values().collect();
    probes.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let fallback = probes.iter().any(|p| p.decay_rate().is_none());
    if fallback && lo < hi {
        chosen = probes
            .iter()
            .min_by(|a, b| a.mean_final_energy.total_cmp(&b.mean_final_energy))
            .map(|p| p.lambda)
            .unwrap_or(chosen);
    }
    Ok(TuneReport {
        lambda: chosen,
        probes,
        fallback,
    })
}

/// A hyperparameter that [`explore_grid`] can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Lambda,
    P,
    Epsilon,
    Sweeps,
    Tau,
    Gamma,
    Eta,
}

impl std::str::FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "lambda" => Param::Lambda,
            "p" => Param::P,
            "eps" | "epsilon" => Param::Epsilon,
            "sweeps" => Param::Sweeps,
            "tau" => Param::Tau,
            "gamma" => Param::Gamma,
            "eta" => Param::Eta,
            other => return Err(Error::InvalidConfig(format!("unknown parameter {other:?}"))),
        })
    }
}

impl Param {
    pub fn apply(self, cfg: &mut SolverConfig, value: f64) {
        match self {
            Param::Lambda => cfg.lambda = value,
            Param::P => cfg.p = value,
            Param::Epsilon => cfg.epsilon = value,
            Param::Sweeps => cfg.max_sweeps = value.round() as usize,
            Param::Tau => cfg.tau = value,
            Param::Gamma => cfg.gamma = value,
            Param::Eta => cfg.eta = Some(value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExploreRow {
    pub param_value: f64,
    pub iteration: usize,
    pub mean_relative_error: f64,
    pub stderr: f64,
}

/// Averaged relative-error curves `1 - C_best(ι) / C_ref` for each value of
/// one hyperparameter, over `(graph, reference cut)` instances and seeds.
pub fn explore_grid(
    instances: &[(Graph, f64)],
    param: Param,
    values: &[f64],
    base: &SolverConfig,
    trials: usize,
) -> Result<Vec<ExploreRow>> {
    if values.is_empty() {
        return Err(Error::InvalidConfig(
            "no parameter values to explore".into(),
        ));
    }
    if instances.iter().any(|(_, r)| !(*r > 0.0)) {
        return Err(Error::InvalidConfig(
            "reference cuts must be positive".into(),
        ));
    }
    let graphs: Vec<Graph> = instances.iter().map(|(g, _)| g.clone()).collect();
    let mut rows = Vec::new();
    for &value in values {
        let mut cfg = base.clone();
        param.apply(&mut cfg, value);
        let traces = run_ensemble(&graphs, &cfg, trials)?;
        let refs: Vec<f64> = instances
            .iter()
            .flat_map(|(_, r)| std::iter::repeat_n(*r, trials))
            .collect();
        let indexed: Vec<(usize, &RunTrace)> = traces.iter().enumerate().collect();
        let len = traces.iter().map(|t| t.records.len()).max().unwrap_or(0);
        for i in 0..len {
            let errs: Vec<f64> = indexed
                .iter()
                .map(|&(k, t)| {
                    let r = &t.records[i.min(t.records.len() - 1)];
                    1.0 - r.best_cut / refs[k]
                })
                .collect();
            rows.push(ExploreRow {
                param_value: value,
                iteration: i + 1,
                mean_relative_error: mean(&errs),
                stderr: std_error(&errs),
            });
        }
    }
    Ok(rows)
}

pub const EXPLORE_CSV_HEADER: &str = "param_value,iteration,mean_relative_error,stderr";

pub fn explore_csv(rows: &[ExploreRow]) -> String {
    let mut out = String::from(EXPLORE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.param_value, r.iteration, r.mean_relative_error, r.stderr
        );
    }
    out
}
