//! Uniform time grids and sampled system occupations.

use crate::error::{invalid, Error, Result};

/// Rounding slack allowed when validating occupations before they are clamped to `[0, 1]`.
const OCCUPATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    n_samples: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, n_samples: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(invalid(format!("time horizon must be finite and > 0, got {t_max}")));
        }
        if n_samples < 2 {
            return Err(invalid(format!("time grid needs at least 2 samples, got {n_samples}")));
        }
        Ok(TimeGrid { t_max, n_samples })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn step(&self) -> f64 {
        self.t_max / (self.n_samples - 1) as f64
    }

    pub fn time(&self, j: usize) -> f64 {
        if j + 1 == self.n_samples {
            self.t_max
        } else {
            j as f64 * self.step()
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_samples).map(|j| self.time(j))
    }
}

/// System occupation `n(t)` sampled on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl Trajectory {
    /// Values within rounding slack of `[0, 1]` are clamped; anything further out is rejected.
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_samples() {
            return Err(invalid(format!(
                "trajectory has {} values for a grid of {} samples",
                values.len(),
                grid.n_samples()
            )));
        }
        let mut values = values;
        for v in values.iter_mut() {
            if !(v.is_finite() && *v >= -OCCUPATION_SLACK && *v <= 1.0 + OCCUPATION_SLACK) {
                return Err(invalid(format!("occupation {v} outside [0, 1]")));
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Trajectory { grid, values })
    }

    /// Samples `f` on every grid point.
    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.times().map(f).collect())
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.times().zip(self.values.iter().copied())
    }

    pub(crate) fn check_same_grid(&self, other: &Trajectory) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "(T = {}, {} samples) vs (T = {}, {} samples)",
                self.grid.t_max(),
                self.grid.n_samples(),
                other.grid.t_max(),
                other.grid.n_samples()
            )));
        }
        Ok(())
    }
}
