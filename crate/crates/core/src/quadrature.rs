//! Composite Simpson quadrature on uniform grids.

use crate::error::{invalid, Result};
use crate::grid::TimeGrid;

/// Default bound on the phase advance per step of auto-resolved grids.
pub const MAX_PHASE_PER_STEP: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadratureRule {
    #[default]
    Simpson,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    n_samples: usize,
    max_phase: f64,
    pub rule: QuadratureRule,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { n_samples: 2001, max_phase: MAX_PHASE_PER_STEP, rule: QuadratureRule::Simpson }
    }
}

impl QuadratureConfig {
    pub fn new(n_samples: usize) -> Result<Self> {
        if n_samples < 3 || n_samples.is_multiple_of(2) {
            return Err(invalid(format!(
                "Simpson quadrature needs an odd sample count >= 3, got {n_samples}"
            )));
        }
        Ok(QuadratureConfig { n_samples, ..Default::default() })
    }

    /// The same rule on a grid twice as fine: `2n − 1` samples and half the phase per step.
    pub fn refined(&self) -> Self {
        QuadratureConfig {
            n_samples: 2 * self.n_samples - 1,
            max_phase: self.max_phase / 2.0,
            rule: self.rule,
        }
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn grid(&self, t_max: f64) -> Result<TimeGrid> {
        TimeGrid::new(t_max, self.n_samples)
    }

    /// Grid over `[0, t_max]` with at least the configured sample count, refined so
    /// that oscillations up to `omega_max` advance by at most the phase bound
    /// ([`MAX_PHASE_PER_STEP`] unless refined) per step.
    pub fn resolved_grid(&self, t_max: f64, omega_max: f64) -> Result<TimeGrid> {
        let needed = (omega_max.abs() * t_max / self.max_phase).ceil() as usize + 1;
        let mut n = self.n_samples.max(needed);
        if n.is_multiple_of(2) {
            n += 1;
        }
        TimeGrid::new(t_max, n)
    }
}

/// Composite Simpson rule for samples `values` spaced by `step`; needs an odd count >= 3.
pub fn simpson(values: &[f64], step: f64) -> Result<f64> {
    let n = values.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid(format!("Simpson quadrature needs an odd sample count >= 3, got {n}")));
    }
    let interior: f64 = values[1..n - 1]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    Ok(step / 3.0 * (values[0] + interior + values[n - 1]))
}
