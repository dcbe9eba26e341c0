//! Product-state heuristics for MaxCut and Ising ground states.
//!
//! The central solver is quantum-inspired iterated local search (QiILS):
//! a product state `⊗_j (cos θ_j |0⟩ + sin θ_j |1⟩)` is relaxed towards a
//! local minimum of `H(λ) = (1-λ) H_i + λ H_f`, where
//! `H_i = -Σ σˣ_j` and `H_f = Σ w_jk σᶻ_j σᶻ_k`, then rounded to a cut and
//! perturbed by reflecting a fraction of the angles. The relaxation is
//! either a sequential closed-form sweep (QiILS) or a synchronous gradient
//! step that parallelizes over vertices (QiIGS). At `λ = 1` QiILS reduces
//! to classical iterated local search.
//!
//! ```
//! use qiils::graph::gen_regular;
//! use qiils::oracle::brute_force_maxcut;
//! use qiils::solver::{run, SolverConfig};
//!
//! let g = gen_regular(16, 3, false, 7).unwrap();
//! let cfg = SolverConfig { lambda: 0.55, p: 0.5, max_sweeps: 80, iterations: 50, ..Default::default() };
//! let trace = run(&g, &cfg).unwrap();
//! assert_eq!(trace.best_cut(), brute_force_maxcut(&g).unwrap().value);
//! ```
//!
//! The `book/` directory of the repository walks through the model and
//! each algorithm; its code listings are compiled as doc-tests of this
//! crate.

pub mod baselines;
pub mod bench;
pub mod energy;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod presets;
pub mod report;
pub mod solver;
pub mod tuning;

pub use error::{Error, ParseError, Result};
pub use graph::{Bitstring, Graph};
pub use solver::{run, Algorithm, RunTrace, SolverConfig};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/maxcut-ising.md")]
    mod maxcut_ising {}
    #[doc = include_str!("../../../book/src/product-states.md")]
    mod product_states {}
    #[doc = include_str!("../../../book/src/qiils.md")]
    mod qiils {}
    #[doc = include_str!("../../../book/src/qiigs.md")]
    mod qiigs {}
    #[doc = include_str!("../../../book/src/tuning.md")]
    mod tuning {}
    #[doc = include_str!("../../../book/src/baselines.md")]
    mod baselines {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
