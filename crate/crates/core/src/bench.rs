//! Per-sweep wall-time measurement with a field-cache audit.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{gcs_gradient, GcsParams, MAX_GCS_QUBITS};
use crate::energy::{ps_energy, AngleVector, FieldCache};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{global_step, sweep, weighted_gradient, Algorithm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTiming {
    pub algo: Algorithm,
    pub sweeps: usize,
    pub repeats: usize,
    /// Median over repeats of the mean time per sweep.
    pub median_ms: f64,
    /// Interquartile range of the same samples.
    pub iqr_ms: f64,
    pub samples_ms: Vec<f64>,
    /// Largest field-cache deviation from recomputation seen after a repeat.
    pub max_field_drift: f64,
    /// Largest gap between the energy implied by the cache and a fresh
    /// evaluation.
    pub max_energy_drift: f64,
}

/// Percentile with linear interpolation between order statistics.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of an empty sample");
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// `(median, interquartile range)`.
pub fn median_iqr(samples: &[f64]) -> (f64, f64) {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    (
        percentile(&sorted, 0.5),
        percentile(&sorted, 0.75) - percentile(&sorted, 0.25),
    )
}

/// Energy implied by the cached fields: `Σ_j a_j cos 2θ_j` counts every
/// edge twice.
fn cached_energy(lambda: f64, th: &AngleVector, cache: &FieldCache) -> f64 {
    let coupling: f64 = cache
        .fields()
        .iter()
        .zip(cache.cos2())
        .map(|(a, c)| a * c)
        .sum::<f64>()
        / 2.0;
    let transverse: f64 = th.as_slice().iter().map(|t| (2.0 * t).sin()).sum();
    lambda * coupling - (1.0 - lambda) * transverse
}

/// Times `sweeps` consecutive sweeps (QiIGS, LQA and GCS: update steps)
/// from `repeats` random starts with seeds `seed, seed + 1, ...`.
///
/// `param` is `λ` for QiILS/QiIGS (ignored by ILS), `γ` for LQA, unused
/// for GCS; `step` is `τ` for QiIGS and `η` for LQA/GCS.
pub fn time_sweeps(
    g: &Graph,
    algo: Algorithm,
    param: f64,
    step: f64,
    sweeps: usize,
    repeats: usize,
    seed: u64,
) -> Result<SweepTiming> {
    if sweeps == 0 || repeats == 0 {
        return Err(Error::InvalidConfig(
            "sweeps and repeats must be positive".into(),
        ));
    }
    if algo == Algorithm::Gcs && g.n() > MAX_GCS_QUBITS {
        return Err(Error::TooLarge {
            n: g.n(),
            max: MAX_GCS_QUBITS,
        });
    }
    let lambda = if algo == Algorithm::Ils { 1.0 } else { param };
    let mut samples = Vec::with_capacity(repeats);
    let mut max_field_drift = 0.0f64;
    let mut max_energy_drift = 0.0f64;
    let mut grad = vec![0.0; g.n()];
    for r in 0..repeats {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let mut th = AngleVector::random(g.n(), &mut rng);
        let mut cache = FieldCache::new(g, &th);
        let mut gcs = GcsParams::zeros(if algo == Algorithm::Gcs { g.n() } else { 0 });
        let start = Instant::now();
        for k in 1..=sweeps {
            match algo {
                Algorithm::Qiils | Algorithm::Ils => {
                    sweep(g, lambda, &mut th, &mut cache);
                }
                Algorithm::Qiigs => {
                    weighted_gradient(lambda, 1.0 - lambda, &th, &cache, &mut grad);
                    global_step(&mut th, &grad, step);
                    cache.rebuild(g, &th);
                }
                Algorithm::Lqa => {
                    let s = k as f64 / sweeps as f64;
                    weighted_gradient(s * param, 1.0 - s, &th, &cache, &mut grad);
                    global_step(&mut th, &grad, step);
                    cache.rebuild(g, &th);
                }
                Algorithm::Gcs => {
                    let s = k as f64 / sweeps as f64;
                    let d = gcs_gradient(g, s, &gcs)?;
                    let flat: Vec<f64> = gcs
                        .to_flat()
                        .iter()
                        .zip(&d)
                        .map(|(p, d)| p - step * d)
                        .collect();
                    gcs = GcsParams::from_flat(g.n(), &flat);
                }
            }
        }
        samples.push(start.elapsed().as_secs_f64() * 1e3 / sweeps as f64);
        if algo != Algorithm::Gcs {
            max_field_drift = max_field_drift.max(cache.max_drift(g, &th));
            let audit_lambda = lambda.clamp(0.0, 1.0);
            let fresh = ps_energy(g, audit_lambda, &th)?;
            max_energy_drift =
                max_energy_drift.max((cached_energy(audit_lambda, &th, &cache) - fresh).abs());
        }
    }
    let (median_ms, iqr_ms) = median_iqr(&samples);
    Ok(SweepTiming {
        algo,
        sweeps,
        repeats,
        median_ms,
        iqr_ms,
        samples_ms: samples,
        max_field_drift,
        max_energy_drift,
    })
}
