//! Single-excitation dynamics of a cavity mode coupled to a finite bath.
//!
//! With one excitation initially in the system and the bath empty, the
//! Hamiltonian `a†B + B†a + Σ ω_k b_k†b_k` acts on the `N+1` one-particle
//! amplitudes as the arrowhead matrix
//!
//! ```text
//! [ 0    G_1  G_2  ... ]
//! [ G_1  ω_1   0   ... ]
//! [ G_2   0   ω_2  ... ]
//! ```
//!
//! in the frame rotating at the system frequency.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bath::DiscreteBath;
use crate::eigen::{EigenSystem, Eigensolver};
use crate::error::{Error, Result};
use crate::grid::{TimeGrid, Trajectory};

/// Grids at least this long are evaluated in parallel.
const PAR_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct StarHamiltonian {
    frequencies: Vec<f64>,
    couplings: Vec<f64>,
}

impl StarHamiltonian {
    pub fn new(bath: &DiscreteBath) -> Self {
        StarHamiltonian {
            frequencies: bath.frequencies().collect(),
            couplings: bath.modes().iter().map(|m| m.coupling).collect(),
        }
    }

    /// Matrix size, `N + 1`.
    pub fn dimension(&self) -> usize {
        self.frequencies.len() + 1
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dimension();
        let mut m = DMatrix::zeros(n, n);
        for (k, (&w, &g)) in self.frequencies.iter().zip(&self.couplings).enumerate() {
            m[(k + 1, k + 1)] = w;
            m[(0, k + 1)] = g;
            m[(k + 1, 0)] = g;
        }
        m
    }

    /// `y = H x` in `O(N)`.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let mut top = Complex64::new(0.0, 0.0);
        for (k, (&w, &g)) in self.frequencies.iter().zip(&self.couplings).enumerate() {
            top += g * x[k + 1];
            y[k + 1] = g * x[0] + w * x[k + 1];
        }
        y[0] = top;
    }

    /// Bound on the spectral norm: `max|ω_k| + ‖G‖₂` (diagonal plus a rank-two border).
    pub fn norm_bound(&self) -> f64 {
        let diag = self.frequencies.iter().fold(0.0, |acc: f64, w| acc.max(w.abs()));
        diag + self.couplings.iter().map(|g| g * g).sum::<f64>().sqrt()
    }
}

pub fn build_star(bath: &DiscreteBath) -> StarHamiltonian {
    StarHamiltonian::new(bath)
}

/// System occupation `n(t)` on `grid`, using the dense eigensolver.
pub fn propagate(bath: &DiscreteBath, grid: &TimeGrid) -> Result<Trajectory> {
    propagate_with(bath, grid, Eigensolver::Dense)
}

pub fn propagate_with(bath: &DiscreteBath, grid: &TimeGrid, solver: Eigensolver) -> Result<Trajectory> {
    let eig = EigenSystem::compute(&build_star(bath), solver)?;
    Trajectory::new(*grid, occupations(&eig, grid))
}

pub(crate) fn occupations(eig: &EigenSystem, grid: &TimeGrid) -> Vec<f64> {
    if grid.n_samples() >= PAR_THRESHOLD {
        (0..grid.n_samples())
            .into_par_iter()
            .map(|j| eig.occupation(grid.time(j)))
            .collect()
    } else {
        grid.times().map(|t| eig.occupation(t)).collect()
    }
}

/// The system's reduced density matrix `diag(n, 1 − n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensity {
    pub excited: f64,
    pub ground: f64,
}

impl ReducedDensity {
    pub fn from_occupation(n: f64) -> Self {
        ReducedDensity { excited: n, ground: 1.0 - n }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.excited, 0.0], [0.0, self.ground]]
    }

    pub fn trace(&self) -> f64 {
        self.excited + self.ground
    }
}

pub fn reduced_density(traj: &Trajectory, j: usize) -> Result<ReducedDensity> {
    traj.values()
        .get(j)
        .map(|&n| ReducedDensity::from_occupation(n))
        .ok_or(Error::IndexOutOfRange { index: j, len: traj.values().len() })
}

/// Largest `step · max|ω|` the ODE oracle accepts.
pub const ORACLE_MAX_PHASE: f64 = 0.1;

/// Per-substep bound on `h‖H‖` for the Taylor integrator.
const TAYLOR_MAX_NORM_STEP: f64 = 0.5;
const TAYLOR_MAX_ORDER: usize = 60;

/// Independent check of [`propagate`]: integrates `i ċ = H c` directly with a
/// truncated Taylor series of the propagator, never diagonalizing `H`.
pub fn propagate_ode_oracle(bath: &DiscreteBath, grid: &TimeGrid) -> Result<Trajectory> {
    let phase = grid.step() * bath.max_abs_frequency();
    if phase >= ORACLE_MAX_PHASE {
        return Err(Error::StepTooLarge(phase));
    }
    let h = build_star(bath);
    let mut state = initial_state(h.dimension());
    let mut values = Vec::with_capacity(grid.n_samples());
    values.push(state[0].norm_sqr());
    let mut t = 0.0;
    for j in 1..grid.n_samples() {
        let next = grid.time(j);
        taylor_advance(&h, &mut state, next - t);
        t = next;
        values.push(state[0].norm_sqr());
    }
    Trajectory::new(*grid, values)
}

/// Full one-particle state at time `t` (system amplitude first), by Taylor integration.
pub fn oracle_state_at(bath: &DiscreteBath, t: f64) -> Vec<Complex64> {
    let h = build_star(bath);
    let mut state = initial_state(h.dimension());
    taylor_advance(&h, &mut state, t);
    state
}

fn initial_state(dim: usize) -> Vec<Complex64> {
    let mut s = vec![Complex64::new(0.0, 0.0); dim];
    s[0] = Complex64::new(1.0, 0.0);
    s
}

fn taylor_advance(h: &StarHamiltonian, state: &mut [Complex64], dt: f64) {
    if dt == 0.0 {
        return;
    }
    let substeps = ((dt.abs() * h.norm_bound()) / TAYLOR_MAX_NORM_STEP).ceil().max(1.0) as usize;
    let step = dt / substeps as f64;
    let n = state.len();
    let mut term = vec![Complex64::new(0.0, 0.0); n];
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    let minus_i_step = Complex64::new(0.0, -step);
    for _ in 0..substeps {
        term.copy_from_slice(state);
        for order in 1..=TAYLOR_MAX_ORDER {
            h.apply(&term, &mut next);
            let scale = minus_i_step / order as f64;
            let mut size = 0.0;
            for (t, x) in term.iter_mut().zip(&next) {
                *t = scale * x;
                size += t.norm_sqr();
            }
            for (s, t) in state.iter_mut().zip(&term) {
                *s += t;
            }
            if size < 1e-36 {
                break;
            }
        }
    }
}
