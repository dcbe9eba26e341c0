//! Exact reference values for small instances: exhaustive MaxCut,
//! statevector expectations and ground energies of `H(λ)`, and a grid
//! minimizer for the one-site energy.
//!
//! Statevectors index basis states by bitmask, with qubit `j` at bit `j`
//! and `|1⟩` meaning `b_j = 1` (spin `-1`).

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::energy::{check_angles, check_lambda, AngleVector};
use crate::error::{Error, Result};
use crate::graph::{cut_value, Bitstring, Graph};

/// Largest `n` accepted by the brute-force MaxCut enumeration.
pub const MAX_BRUTE_FORCE: usize = 24;
/// Largest register the statevector routines accept.
pub const MAX_STATEVECTOR_QUBITS: usize = 20;
/// Largest `n` accepted by [`exact_ground_energy`].
pub const MAX_GROUND_STATE: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Enumeration,
    Lanczos,
    Diagonal,
    Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub witness: Bitstring,
    pub method: OracleMethod,
}

/// Optimal cut by enumerating all `2^(n-1)` bitstrings with `b_0 = 0`.
pub fn brute_force_maxcut(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n > MAX_BRUTE_FORCE {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_FORCE,
        });
    }
    if n == 0 {
        return Ok(OracleResult {
            value: 0.0,
            witness: Bitstring::zeros(0),
            method: OracleMethod::Enumeration,
        });
    }
    let edges: Vec<(u32, u32, f64)> = g
        .edges()
        .iter()
        .map(|e| (e.u as u32, e.v as u32, e.w))
        .collect();
    let cut_of = |mask: u64| -> f64 {
        edges
            .iter()
            .filter(|&&(u, v, _)| ((mask >> u) ^ (mask >> v)) & 1 == 1)
            .map(|&(_, _, w)| w)
            .sum()
    };
    // Bit 0 is fixed to 0, so masks only range over the even numbers.
    let half = 1u64 << (n - 1);
    let (value, mask) = (0..half)
        .into_par_iter()
        .map(|m| {
            let mask = m << 1;
            (cut_of(mask), mask)
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let witness = Bitstring::from_mask(mask, n);
    debug_assert_eq!(cut_value(g, &witness).unwrap(), value);
    Ok(OracleResult {
        value,
        witness,
        method: OracleMethod::Enumeration,
    })
}

/// Diagonal of `H_f` over all basis states.
pub fn ising_diagonal(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: MAX_STATEVECTOR_QUBITS,
        });
    }
    let edges: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    Ok((0..1usize << n)
        .into_par_iter()
        .map(|idx| {
            edges
                .iter()
                .map(|&(u, v, w)| {
                    if ((idx >> u) ^ (idx >> v)) & 1 == 0 {
                        w
                    } else {
                        -w
                    }
                })
                .sum()
        })
        .collect())
}

/// `⟨ψ| (1-λ)(-Σ σˣ) + λ H_f |ψ⟩` without materializing the matrix.
pub fn exact_expectation(g: &Graph, lambda: f64, state: &[Complex64]) -> Result<f64> {
    check_lambda(lambda)?;
    let n = g.n();
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: MAX_STATEVECTOR_QUBITS,
        });
    }
    if state.len() != 1usize << n {
        return Err(Error::LengthMismatch {
            expected: 1usize << n,
            found: state.len(),
        });
    }
    let norm: f64 = state.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let diagonal = ising_diagonal(g)?;
    // Serial sums in index order, divided by the norm accumulated the same
    // way: a uniform state then gives exactly -n at λ = 0.
    let zz: f64 = state
        .iter()
        .zip(&diagonal)
        .map(|(a, d)| a.norm_sqr() * d)
        .sum::<f64>()
        / norm;
    // Σ_j ⟨ψ|σˣ_j|ψ⟩ = Σ_j Σ_x conj(ψ_x) ψ_{x ^ 2^j}
    let x: f64 = (0..n)
        .map(|j| {
            let bit = 1usize << j;
            state
                .iter()
                .enumerate()
                .map(|(idx, a)| (a.conj() * state[idx ^ bit]).re)
                .sum::<f64>()
                / norm
        })
        .sum();
    Ok(lambda * zz - (1.0 - lambda) * x)
}

/// Statevector of the product state `⊗_j (cos θ_j |0⟩ + sin θ_j |1⟩)`.
pub fn product_statevector(th: &AngleVector) -> Result<Vec<Complex64>> {
    let n = th.len();
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: MAX_STATEVECTOR_QUBITS,
        });
    }
    let (c, s): (Vec<f64>, Vec<f64>) = th.as_slice().iter().map(|t| (t.cos(), t.sin())).unzip();
    Ok((0..1usize << n)
        .map(|idx| {
            let amp: f64 = (0..n)
                .map(|j| if (idx >> j) & 1 == 0 { c[j] } else { s[j] })
                .product();
            Complex64::new(amp, 0.0)
        })
        .collect())
}

/// `⟨ψ(θ)|H(λ)|ψ(θ)⟩` through the statevector route.
pub fn product_state_expectation(g: &Graph, lambda: f64, th: &AngleVector) -> Result<f64> {
    check_angles(g, th)?;
    exact_expectation(g, lambda, &product_statevector(th)?)
}

fn apply_hamiltonian(lambda: f64, diagonal: &[f64], n: usize, v: &[f64], out: &mut [f64]) {
    out.par_iter_mut().enumerate().for_each(|(idx, o)| {
        let flips: f64 = (0..n).map(|j| v[idx ^ (1usize << j)]).sum();
        *o = lambda * diagonal[idx] * v[idx] - (1.0 - lambda) * flips;
    });
}

const LANCZOS_MAX_ITER: usize = 400;
const LANCZOS_RESIDUAL: f64 = 1e-10;

/// Lowest eigenvalue of `H(λ)` for `n ≤ 14`.
///
/// `λ = 0` and `λ = 1` are answered in closed form (`-n`, and the minimum
/// of the diagonal). Otherwise Lanczos with full reorthogonalization runs
/// from the uniform vector: `H(λ)` has nonpositive off-diagonal entries
/// and is irreducible for `λ < 1`, so its ground state is the unique
/// positive vector and overlaps the start.
pub fn exact_ground_energy(g: &Graph, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let n = g.n();
    if n > MAX_GROUND_STATE {
        return Err(Error::TooLarge {
            n,
            max: MAX_GROUND_STATE,
        });
    }
    if lambda == 0.0 {
        return Ok(-(n as f64));
    }
    let diagonal = ising_diagonal(g)?;
    if lambda == 1.0 || n == 0 {
        return Ok(lambda * diagonal.iter().copied().fold(f64::INFINITY, f64::min));
    }

    let dim = 1usize << n;
    let mut basis: Vec<Vec<f64>> = vec![vec![(dim as f64).sqrt().recip(); dim]];
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; dim];
    for k in 0..LANCZOS_MAX_ITER.min(dim) {
        apply_hamiltonian(lambda, &diagonal, n, &basis[k], &mut w);
        let alpha = dot(&w, &basis[k]);
        alphas.push(alpha);
        // Full reorthogonalization, applied twice.
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let beta = dot(&w, &w).sqrt();
        let (ritz, last_component) = lowest_ritz(&alphas, &betas);
        if beta * last_component.abs() < LANCZOS_RESIDUAL || beta < 1e-14 || k + 1 == dim {
            return Ok(ritz);
        }
        betas.push(beta);
        basis.push(w.iter().map(|x| x / beta).collect());
    }
    Err(Error::NoConvergence(format!(
        "Lanczos did not reach residual {LANCZOS_RESIDUAL:e} in {LANCZOS_MAX_ITER} steps"
    )))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| x * y).sum()
}

/// Smallest eigenvalue of the Lanczos tridiagonal and the last component
/// of its eigenvector.
fn lowest_ritz(alphas: &[f64], betas: &[f64]) -> (f64, f64) {
    let k = alphas.len();
    let t = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty tridiagonal");
    (value, eig.eigenvectors[(k - 1, idx)])
}

/// Argmin of `A cos 2θ - B sin 2θ` over `points` equispaced angles in
/// `[0, π/2]`.
pub fn grid_minimize_single_site(a: f64, b: f64, points: usize) -> f64 {
    assert!(points >= 2, "grid needs at least two points");
    let step = FRAC_PI_2 / (points - 1) as f64;
    (0..points)
        .map(|i| i as f64 * step)
        .map(|t| (t, a * (2.0 * t).cos() - b * (2.0 * t).sin()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(t, _)| t)
        .expect("nonempty grid")
}
