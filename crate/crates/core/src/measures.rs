//! Error and single-mode influence functionals evaluated from trajectories.
//!
//! For two diagonal reduced states `diag(n, 1−n)` the squared trace distance
//! integrand is `tr[(ρ₁ − ρ₂)²] = 2(n₁ − n₂)²`.

use crate::bath::{DiscreteBath, Mode};
use crate::eigen::Eigensolver;
use crate::error::{Error, Result};
use crate::grid::{TimeGrid, Trajectory};
use crate::propagate::propagate_with;
use crate::quadrature::simpson;

/// `∫₀ᵀ tr[ρ_a(t) − ρ_b(t)]² dt` by Simpson's rule on the shared grid.
pub fn error_measure(traj: &Trajectory, reference: &Trajectory) -> Result<f64> {
    traj.check_same_grid(reference)?;
    let integrand: Vec<f64> = traj
        .values()
        .iter()
        .zip(reference.values())
        .map(|(a, b)| 2.0 * (a - b) * (a - b))
        .collect();
    simpson(&integrand, traj.grid().step())
}

/// What happens to a removed mode's spectral weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Removal {
    /// Plain deletion.
    #[default]
    Delete,
    /// Delete, then hand `G_i²` to the adjacent modes in proportion to their own weights.
    Redistribute,
}

pub fn remove_mode(bath: &DiscreteBath, index: usize) -> Result<DiscreteBath> {
    bath.without(index)
}

/// Removes mode `index`, spreading its weight over its neighbours.
pub fn remove_mode_redistributed(bath: &DiscreteBath, index: usize) -> Result<DiscreteBath> {
    let removed = bath.modes().get(index).copied().ok_or(Error::IndexOutOfRange {
        index,
        len: bath.len(),
    })?;
    let mut modes: Vec<Mode> = bath.modes().to_vec();
    modes.remove(index);
    let neighbours: Vec<usize> = [index.checked_sub(1), Some(index)]
        .into_iter()
        .flatten()
        .filter(|&i| i < modes.len())
        .collect();
    let share: f64 = neighbours.iter().map(|&i| modes[i].coupling.powi(2)).sum();
    let extra = removed.coupling.powi(2);
    for &i in &neighbours {
        let w = modes[i].coupling.powi(2);
        let frac = if share > 0.0 { w / share } else { 1.0 / neighbours.len() as f64 };
        modes[i].coupling = (w + frac * extra).sqrt();
    }
    DiscreteBath::new(modes)
}

/// Influence of mode `index`: the error measure between the bath with and without it.
pub fn influence_numeric(bath: &DiscreteBath, index: usize, grid: &TimeGrid) -> Result<f64> {
    influence_numeric_with(bath, index, grid, Removal::Delete, Eigensolver::default())
}

pub fn influence_numeric_with(
    bath: &DiscreteBath,
    index: usize,
    grid: &TimeGrid,
    removal: Removal,
    solver: Eigensolver,
) -> Result<f64> {
    let reduced = match removal {
        Removal::Delete => remove_mode(bath, index)?,
        Removal::Redistribute => remove_mode_redistributed(bath, index)?,
    };
    let (full, without) = rayon::join(
        || propagate_with(bath, grid, solver),
        || propagate_with(&reduced, grid, solver),
    );
    error_measure(&without?, &full?)
}
