//! Product-state energy of the interpolated Hamiltonian
//! `H(λ) = -(1-λ) Σ σˣ_j + λ Σ w σᶻ_u σᶻ_v`.
//!
//! Each qubit is `cos θ_j |0⟩ + sin θ_j |1⟩`, so `⟨σᶻ_j⟩ = cos 2θ_j` and
//! `⟨σˣ_j⟩ = sin 2θ_j`. The local field of vertex `j` is
//! `a_j = Σ_k w_jk cos 2θ_k`; with all other angles fixed the energy is
//! `λ a_j cos 2θ_j - (1-λ) sin 2θ_j` plus a constant.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex angles of a product state, nominally in `[0, π/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector(Vec<f64>);

impl AngleVector {
    pub fn new(theta: Vec<f64>) -> Self {
        Self(theta)
    }

    /// Every angle equal to `theta`.
    pub fn uniform(n: usize, theta: f64) -> Self {
        Self(vec![theta; n])
    }

    /// i.i.d. uniform on `[0, π/2]`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self((0..n).map(|_| rng.gen_range(0.0..=FRAC_PI_2)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for AngleVector {
    type Output = f64;

    fn index(&self, j: usize) -> &f64 {
        &self.0[j]
    }
}

impl std::ops::IndexMut<usize> for AngleVector {
    fn index_mut(&mut self, j: usize) -> &mut f64 {
        &mut self.0[j]
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

pub(crate) fn check_angles(g: &Graph, th: &AngleVector) -> Result<()> {
    if th.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: th.len(),
        });
    }
    Ok(())
}

/// `⟨Ψ(θ)| H(λ) |Ψ(θ)⟩` for the product state `Ψ(θ)`.
pub fn ps_energy(g: &Graph, lambda: f64, th: &AngleVector) -> Result<f64> {
    check_lambda(lambda)?;
    check_angles(g, th)?;
    let cos2: Vec<f64> = th.as_slice().iter().map(|t| (2.0 * t).cos()).collect();
    let coupling: f64 = g.edges().iter().map(|e| e.w * cos2[e.u] * cos2[e.v]).sum();
    let transverse: f64 = th.as_slice().iter().map(|t| (2.0 * t).sin()).sum();
    Ok(lambda * coupling - (1.0 - lambda) * transverse)
}

/// `a_j = Σ_k w_jk cos 2θ_k`, summed afresh.
pub fn local_field(g: &Graph, th: &AngleVector, j: usize) -> f64 {
    g.neighbors(j).map(|(k, w)| w * (2.0 * th[k]).cos()).sum()
}

/// Number of single-site updates between full recomputations of the cache.
pub const REFRESH_INTERVAL: usize = 10_000;

/// Incrementally maintained local fields `a_j` and `cos 2θ_j`.
///
/// Single writer: the owner must route every angle change through
/// [`FieldCache::update`] (or rebuild the cache) to keep it consistent.
#[derive(Debug, Clone)]
pub struct FieldCache {
    a: Vec<f64>,
    cos2: Vec<f64>,
    since_refresh: usize,
}

impl FieldCache {
    pub fn new(g: &Graph, th: &AngleVector) -> Self {
        let cos2 = th.as_slice().iter().map(|t| (2.0 * t).cos()).collect();
        let mut cache = Self {
            a: vec![0.0; g.n()],
            cos2,
            since_refresh: 0,
        };
        cache.refresh(g);
        cache
    }

    #[inline]
    pub fn field(&self, j: usize) -> f64 {
        self.a[j]
    }

    pub fn fields(&self) -> &[f64] {
        &self.a
    }

    /// Cached `cos 2θ_j`.
    pub fn cos2(&self) -> &[f64] {
        &self.cos2
    }

    /// Accounts for `θ_j` moving from `old_theta` to `new_theta`; costs
    /// `O(deg j)`.
    pub fn update(&mut self, g: &Graph, j: usize, old_theta: f64, new_theta: f64) {
        if old_theta == new_theta {
            return;
        }
        let delta = (2.0 * new_theta).cos() - (2.0 * old_theta).cos();
        self.cos2[j] = (2.0 * new_theta).cos();
        self.push_delta(g, j, delta);
    }

    /// Same as [`update`](Self::update) but trusts the cached old cosine,
    /// saving one trig call.
    #[inline]
    pub(crate) fn set_angle(&mut self, g: &Graph, j: usize, new_theta: f64) {
        let new_cos = (2.0 * new_theta).cos();
        let delta = new_cos - self.cos2[j];
        self.cos2[j] = new_cos;
        self.push_delta(g, j, delta);
    }

    #[inline]
    fn push_delta(&mut self, g: &Graph, j: usize, delta: f64) {
        let (targets, weights) = g.adjacency(j);
        for (&k, &w) in targets.iter().zip(weights) {
            self.a[k as usize] += w * delta;
        }
        self.since_refresh += 1;
        if self.since_refresh >= REFRESH_INTERVAL {
            self.refresh(g);
        }
    }

    /// Recomputes every field from the cached cosines.
    pub fn refresh(&mut self, g: &Graph) {
        let cos2 = &self.cos2;
        self.a.par_iter_mut().enumerate().for_each(|(j, a)| {
            let (targets, weights) = g.adjacency(j);
            *a = targets
                .iter()
                .zip(weights)
                .map(|(&k, &w)| w * cos2[k as usize])
                .sum();
        });
        self.since_refresh = 0;
    }

    /// Recomputes cosines and fields from `th`, in parallel over vertices.
    pub fn rebuild(&mut self, g: &Graph, th: &AngleVector) {
        self.cos2
            .par_iter_mut()
            .zip(th.as_slice().par_iter())
            .for_each(|(c, t)| *c = (2.0 * t).cos());
        self.refresh(g);
    }

    /// Largest deviation of the cached fields from a compensated
    /// recomputation against `th`.
    pub fn max_drift(&self, g: &Graph, th: &AngleVector) -> f64 {
        (0..g.n())
            .map(|j| {
                let exact = neumaier_sum(g.neighbors(j).map(|(k, w)| w * (2.0 * th[k]).cos()));
                (self.a[j] - exact).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Kahan-Babuška (Neumaier) compensated sum.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
