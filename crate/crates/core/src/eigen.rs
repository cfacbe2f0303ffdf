//! Spectral decomposition of the star (arrowhead) Hamiltonian.
//!
//! Only the eigenvalues `λ_j` and the system overlaps `p_j = |⟨0|v_j⟩|²` are
//! needed to evolve the system amplitude, `c(t) = Σ_j p_j e^{−iλ_j t}`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::propagate::StarHamiltonian;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Eigensolver {
    /// Dense symmetric QR on the full `(N+1)×(N+1)` matrix.
    #[default]
    Dense,
    /// Root-finding on the secular equation `λ = Σ_k G_k²/(λ − ω_k)`; `O(N²)`.
    Arrowhead,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
}

impl EigenSystem {
    pub fn compute(h: &StarHamiltonian, solver: Eigensolver) -> Result<Self> {
        match solver {
            Eigensolver::Dense => dense(h),
            Eigensolver::Arrowhead => Ok(arrowhead(h)),
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// System-overlap weight of each eigenvector, aligned with [`Self::eigenvalues`].
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn completeness(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        let (re, im) = self
            .eigenvalues
            .iter()
            .zip(&self.weights)
            .fold((0.0, 0.0), |(re, im), (&l, &p)| {
                let (s, c) = (l * t).sin_cos();
                (re + p * c, im - p * s)
            });
        Complex64::new(re, im)
    }

    pub fn occupation(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr()
    }
}

fn dense(h: &StarHamiltonian) -> Result<EigenSystem> {
    let size = h.dimension();
    let m: DMatrix<f64> = h.to_dense();
    let max_iter = 1000 * size.max(1);
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, max_iter)
        .ok_or(Error::EigenNonConvergence { size })?;
    let mut pairs: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &l)| (l, eig.eigenvectors[(0, j)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (eigenvalues, weights) = pairs.into_iter().unzip();
    Ok(EigenSystem { eigenvalues, weights })
}

/// Couplings below this fraction of the coupling norm are treated as decoupled.
const DEFLATION_TOL: f64 = 1e-15;

fn arrowhead(h: &StarHamiltonian) -> EigenSystem {
    let norm = h.couplings().iter().map(|g| g * g).sum::<f64>().sqrt();
    let mut pairs = Vec::with_capacity(h.dimension());
    let mut poles = Vec::new();
    let mut z2 = Vec::new();
    for (&w, &g) in h.frequencies().iter().zip(h.couplings()) {
        if g <= DEFLATION_TOL * norm {
            pairs.push((w, 0.0));
        } else {
            poles.push(w);
            z2.push(g * g);
        }
    }

    if poles.is_empty() {
        pairs.push((0.0, 1.0));
    } else {
        let m = poles.len();
        let first = poles[0];
        let last = poles[m - 1];
        // Weyl: the spectrum lies within ‖z‖ of the decoupled diagonal.
        let lower = first.min(0.0) - norm - 1.0;
        let upper = last.max(0.0) + norm + 1.0;
        pairs.push(root_outer(&poles, &z2, 0, lower - first, 0.0));
        for i in 0..m - 1 {
            pairs.push(root_inner(&poles, &z2, i));
        }
        pairs.push(root_outer(&poles, &z2, m - 1, 0.0, upper - last));
    }

    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (eigenvalues, weights) = pairs.into_iter().unzip();
    EigenSystem { eigenvalues, weights }
}

/// Secular function `f(origin + μ) = origin + μ − Σ_k z_k²/(μ − δ_k)` with
/// `δ_k = d_k − origin`, and the weight sum `Σ_k z_k²/(μ − δ_k)²`.
fn secular(poles: &[f64], z2: &[f64], origin: f64, mu: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut deriv = 0.0;
    for (&d, &z) in poles.iter().zip(z2) {
        let gap = mu - (d - origin);
        sum += z / gap;
        deriv += z / (gap * gap);
    }
    (origin + mu - sum, deriv)
}

/// Bisects the increasing secular function in the shifted variable on `(lo, hi)`.
fn bisect(poles: &[f64], z2: &[f64], origin: f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if secular(poles, z2, origin, mid).0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    let (_, deriv) = secular(poles, z2, origin, mu);
    (origin + mu, 1.0 / (1.0 + deriv))
}

fn root_inner(poles: &[f64], z2: &[f64], i: usize) -> (f64, f64) {
    let (left, right) = (poles[i], poles[i + 1]);
    let half = 0.5 * (right - left);
    // Shift to whichever pole the root is nearer to keep the differences accurate.
    if secular(poles, z2, left, half).0 >= 0.0 {
        bisect(poles, z2, left, 0.0, half)
    } else {
        bisect(poles, z2, right, left - right + half, 0.0)
    }
}

fn root_outer(poles: &[f64], z2: &[f64], i: usize, lo: f64, hi: f64) -> (f64, f64) {
    bisect(poles, z2, poles[i], lo, hi)
}
