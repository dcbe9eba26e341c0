//! Multi-trial runs and their JSON / CSV trace files.
//!
//! JSON layout, one file per invocation:
//!
//! ```text
//! {instance, algo, config,
//!  trials: [{seed, iterations: [{iota, best_cut, best_energy, sweeps, ms}], final_bits}],
//!  summary: {trials, best, avg, solved, best_known, best_relative_error}}
//! ```
//!
//! The CSV form carries the same per-iteration numbers, one row per record.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::solver::{run, Algorithm, IterationRecord, RunTrace, SolverConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub iterations: Vec<IterationRecord>,
    pub final_bits: String,
}

impl TrialRecord {
    pub fn best_cut(&self) -> f64 {
        self.iterations.last().map_or(0.0, |r| r.best_cut)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub best: f64,
    pub avg: f64,
    /// Trials whose best cut equals the best-known value.
    pub solved: Option<usize>,
    pub best_known: Option<f64>,
    pub best_relative_error: Option<f64>,
}

impl Summary {
    pub fn new(best_cuts: &[f64], best_known: Option<f64>) -> Self {
        let best = best_cuts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let avg = best_cuts.iter().sum::<f64>() / best_cuts.len().max(1) as f64;
        let solved = best_known.map(|v| {
            best_cuts
                .iter()
                .filter(|&&c| (c - v).abs() <= 1e-9 * v.abs().max(1.0))
                .count()
        });
        Self {
            trials: best_cuts.len(),
            best,
            avg,
            solved,
            best_known,
            best_relative_error: best_known.map(|v| 1.0 - best / v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub instance: String,
    pub algo: Algorithm,
    pub config: SolverConfig,
    pub trials: Vec<TrialRecord>,
    pub summary: Summary,
}

/// Runs `trials` seeds (`cfg.seed`, `cfg.seed + 1`, ...) in parallel;
/// results are ordered by trial index.
pub fn run_trials(g: &Graph, cfg: &SolverConfig, trials: usize) -> Result<Vec<(u64, RunTrace)>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let seed = cfg.seed.wrapping_add(t);
            let trace = run(
                g,
                &SolverConfig {
                    seed,
                    ..cfg.clone()
                },
            )?;
            Ok((seed, trace))
        })
        .collect()
}

impl TraceFile {
    pub fn new(
        instance: impl Into<String>,
        cfg: &SolverConfig,
        runs: Vec<(u64, RunTrace)>,
        best_known: Option<f64>,
    ) -> Self {
        let trials: Vec<TrialRecord> = runs
            .into_iter()
            .map(|(seed, trace)| TrialRecord {
                seed,
                final_bits: trace.best_bits.to_string(),
                iterations: trace.records,
            })
            .collect();
        let cuts: Vec<f64> = trials.iter().map(TrialRecord::best_cut).collect();
        Self {
            instance: instance.into(),
            algo: cfg.algo,
            config: cfg.clone(),
            summary: Summary::new(&cuts, best_known),
            trials,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRACE_CSV_HEADER);
        out.push('\n');
        for (t, trial) in self.trials.iter().enumerate() {
            for r in &trial.iterations {
                let _ = writeln!(
                    out,
                    "{t},{},{},{},{},{},{}",
                    trial.seed, r.iota, r.best_cut, r.best_energy, r.sweeps, r.ms
                );
            }
        }
        out
    }
}

pub const TRACE_CSV_HEADER: &str = "trial,seed,iota,best_cut,best_energy,sweeps,ms";
