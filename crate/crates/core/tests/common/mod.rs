//! Reference implementations kept independent of the library's own code
//! paths: plain loops over the edge list and dense matrices.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use qiils::graph::Graph;
use qiils::Bitstring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph with uniform weights in `[-1, 1]` (zero excluded).
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen::<f64>() < density {
                let mut w: f64 = r.gen_range(-1.0..1.0);
                if w == 0.0 {
                    w = 0.5;
                }
                edges.push((u, v, w));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn naive_cut(g: &Graph, bits: &[u8]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| bits[e.u] != bits[e.v])
        .map(|e| e.w)
        .sum()
}

pub fn naive_energy(g: &Graph, bits: &[u8]) -> f64 {
    let z = |b: u8| if b == 0 { 1.0 } else { -1.0 };
    g.edges()
        .iter()
        .map(|e| e.w * z(bits[e.u]) * z(bits[e.v]))
        .sum()
}

/// Enumerates all `2^n` assignments.
pub fn naive_maxcut(g: &Graph) -> f64 {
    let n = g.n();
    (0u64..1 << n)
        .map(|mask| {
            let bits: Vec<u8> = (0..n).map(|j| ((mask >> j) & 1) as u8).collect();
            naive_cut(g, &bits)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn naive_ps_energy(g: &Graph, lambda: f64, th: &[f64]) -> f64 {
    let mut coupling = 0.0;
    for e in g.edges() {
        coupling += e.w * (2.0 * th[e.u]).cos() * (2.0 * th[e.v]).cos();
    }
    let mut transverse = 0.0;
    for t in th {
        transverse += (2.0 * t).sin();
    }
    lambda * coupling - (1.0 - lambda) * transverse
}

/// `(1 - λ)(-Σ σˣ) + λ Σ w σᶻσᶻ` as a dense matrix; qubit `j` is bit `j`
/// of the basis index and `|0⟩` has `σᶻ = +1`.
pub fn dense_hamiltonian(g: &Graph, lambda: f64) -> DMatrix<f64> {
    let n = g.n();
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let bits: Vec<u8> = (0..n).map(|j| ((x >> j) & 1) as u8).collect();
        h[(x, x)] = lambda * naive_energy(g, &bits);
        for j in 0..n {
            h[(x ^ (1 << j), x)] -= 1.0 - lambda;
        }
    }
    h
}

pub fn dense_ground_energy(g: &Graph, lambda: f64) -> f64 {
    SymmetricEigen::new(dense_hamiltonian(g, lambda))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

pub fn is_one_flip_stable(g: &Graph, bits: &Bitstring) -> bool {
    let base = naive_cut(g, bits.as_slice());
    (0..g.n()).all(|j| {
        let mut b = bits.as_slice().to_vec();
        b[j] ^= 1;
        naive_cut(g, &b) <= base + 1e-12
    })
}

pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[i] += h;
            m[i] -= h;
            (f(&p) - f(&m)) / (2.0 * h)
        })
        .collect()
}
