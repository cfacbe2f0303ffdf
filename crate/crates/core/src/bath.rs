//! Continuum spectral densities and their finite discrete-mode representations.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// Density of squared system–bath couplings per unit frequency.
///
/// Only the flat density is provided; discretizers are written against
/// [`SpectralDensity::evaluate`] so further variants slot in without changes
/// elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
#[non_exhaustive]
pub enum SpectralDensity {
    /// `J(ω) = γ/2π` for every frequency.
    Flat { gamma: f64 },
}

impl SpectralDensity {
    pub fn flat(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(invalid(format!("decay rate must be finite and > 0, got {gamma}")));
        }
        Ok(SpectralDensity::Flat { gamma })
    }

    pub fn evaluate(&self, _omega: f64) -> f64 {
        match *self {
            SpectralDensity::Flat { gamma } => gamma / (2.0 * PI),
        }
    }

    /// Integral of the density over `[lo, hi]`.
    pub fn band_integral(&self, lo: f64, hi: f64) -> f64 {
        match *self {
            SpectralDensity::Flat { gamma } => gamma * (hi - lo) / (2.0 * PI),
        }
    }

    /// Golden-rule decay rate `2π J(0)` of a system resonant at zero detuning.
    pub fn decay_rate(&self) -> f64 {
        2.0 * PI * self.evaluate(0.0)
    }
}

/// One bath mode: detuning from the system frequency and real coupling amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: f64,
    pub coupling: f64,
}

impl Mode {
    pub fn new(omega: f64, coupling: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(invalid(format!("mode frequency must be finite, got {omega}")));
        }
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(invalid(format!("coupling must be finite and >= 0, got {coupling}")));
        }
        Ok(Mode { omega, coupling })
    }
}

/// Finite set of modes ordered by strictly increasing frequency.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteBath {
    modes: Vec<Mode>,
}

impl DiscreteBath {
    pub fn empty() -> Self {
        DiscreteBath { modes: Vec::new() }
    }

    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        for m in &modes {
            Mode::new(m.omega, m.coupling)?;
        }
        if let Some(w) = modes.windows(2).find(|w| w[1].omega <= w[0].omega) {
            return Err(invalid(format!(
                "mode frequencies must be strictly increasing ({} then {})",
                w[0].omega, w[1].omega
            )));
        }
        Ok(DiscreteBath { modes })
    }

    /// Builds a bath from `(omega, coupling)` pairs in any order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut modes = pairs
            .into_iter()
            .map(|(w, g)| Mode::new(w, g))
            .collect::<Result<Vec<_>>>()?;
        modes.sort_by(|a, b| a.omega.total_cmp(&b.omega));
        Self::new(modes)
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.modes.iter().map(|m| m.omega)
    }

    /// Total coupling weight `Σ G_i²`.
    pub fn weight(&self) -> f64 {
        self.modes.iter().map(|m| m.coupling * m.coupling).sum()
    }

    pub fn max_abs_frequency(&self) -> f64 {
        self.modes.iter().fold(0.0, |acc, m| acc.max(m.omega.abs()))
    }

    /// Largest gap between adjacent mode frequencies (0 for fewer than two modes).
    pub fn max_spacing(&self) -> f64 {
        self.modes
            .windows(2)
            .map(|w| w[1].omega - w[0].omega)
            .fold(0.0, f64::max)
    }

    /// Index of the mode closest in frequency to `omega`.
    pub fn nearest(&self, omega: f64) -> Option<usize> {
        if self.modes.is_empty() {
            return None;
        }
        let i = self.modes.partition_point(|m| m.omega < omega);
        if i == 0 {
            return Some(0);
        }
        if i == self.modes.len() {
            return Some(i - 1);
        }
        if omega - self.modes[i - 1].omega <= self.modes[i].omega - omega {
            Some(i - 1)
        } else {
            Some(i)
        }
    }

    pub fn without(&self, index: usize) -> Result<Self> {
        if index >= self.modes.len() {
            return Err(Error::IndexOutOfRange { index, len: self.modes.len() });
        }
        let mut modes = self.modes.clone();
        modes.remove(index);
        Ok(DiscreteBath { modes })
    }

    /// Inserts a mode at its sorted position; rejects a duplicate frequency.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        let mode = Mode::new(mode.omega, mode.coupling)?;
        let i = self.modes.partition_point(|m| m.omega < mode.omega);
        if self.modes.get(i).is_some_and(|m| m.omega == mode.omega) {
            return Err(invalid(format!("bath already has a mode at omega = {}", mode.omega)));
        }
        let mut modes = self.modes.clone();
        modes.insert(i, mode);
        Ok(DiscreteBath { modes })
    }

    /// The bath reflected through zero frequency, `ω → −ω`.
    pub fn mirrored(&self) -> Self {
        let modes = self
            .modes
            .iter()
            .rev()
            .map(|m| Mode { omega: -m.omega, coupling: m.coupling })
            .collect();
        DiscreteBath { modes }
    }
}
