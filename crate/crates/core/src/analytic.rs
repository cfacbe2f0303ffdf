//! Closed-form results for the cavity-decay model.
//!
//! With an infinite band of evenly spaced modes (spacing `Δ`) the system
//! amplitude obeys `ȧ = −γa/2` up to the recurrence time `2π/Δ`. Deleting the
//! mode at `ω` adds back its memory kernel,
//!
//! ```text
//! ȧ(t) = −γ a(t)/2 + G² ∫₀ᵗ e^{−iω(t−t′)} a(t′) dt′,   G² = γΔ/2π,
//! ```
//!
//! whose solution is a sum of two exponentials with rates
//! `s± = −(γ/2 + iω)/2 ± √σ/2`, `σ = (γ/2)² + 4G² − ω² − iωγ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{simpson, QuadratureConfig};

/// Continuum decay `n(t) = e^{−γt}`.
pub fn continuum_n(gamma: f64, t: f64) -> f64 {
    (-gamma * t).exp()
}

/// The continuum-minus-one-mode problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemovedModeParams {
    pub gamma: f64,
    pub delta: f64,
    pub omega: f64,
}

impl RemovedModeParams {
    pub fn new(gamma: f64, delta: f64, omega: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(invalid(format!("gamma must be finite and > 0, got {gamma}")));
        }
        // Δ = 0 is allowed: it removes a mode of zero weight.
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(invalid(format!("delta must be finite and >= 0, got {delta}")));
        }
        if !omega.is_finite() {
            return Err(invalid(format!("omega must be finite, got {omega}")));
        }
        Ok(RemovedModeParams { gamma, delta, omega })
    }

    /// `G² = γΔ/2π`.
    pub fn coupling_sq(&self) -> f64 {
        self.gamma * self.delta / (2.0 * PI)
    }

    /// End of the window on which the removed-mode equation holds, `2π/Δ`.
    pub fn validity_horizon(&self) -> f64 {
        if self.delta == 0.0 {
            f64::INFINITY
        } else {
            2.0 * PI / self.delta
        }
    }

    /// The two exponential rates `(s₊, s₋)`.
    pub fn rates(&self) -> Result<(Complex64, Complex64)> {
        let (g, w) = (self.gamma, self.omega);
        let sigma = Complex64::new(0.25 * g * g + 4.0 * self.coupling_sq() - w * w, -w * g);
        if sigma.norm() == 0.0 {
            return Err(Error::ConfluentRoots { omega: w });
        }
        // Principal branch: Re √σ >= 0.
        let root = sigma.sqrt();
        let centre = -0.5 * Complex64::new(0.5 * g, w);
        Ok((centre + 0.5 * root, centre - 0.5 * root))
    }

    fn check_time(&self, t: f64) -> Result<()> {
        let horizon = self.validity_horizon();
        if !(t >= 0.0 && t <= horizon * (1.0 + 1e-12)) {
            return Err(invalid(format!("time {t} outside the validity window [0, {horizon}]")));
        }
        Ok(())
    }
}

/// System amplitude `a(t)` with the mode at `ω` removed from an infinite even band.
pub fn removed_mode_amplitude(p: &RemovedModeParams, t: f64) -> Result<Complex64> {
    p.check_time(t)?;
    let (sp, sm) = p.rates()?;
    Ok(amplitude_from_rates(sp, sm, p.omega, t))
}

fn amplitude_from_rates(sp: Complex64, sm: Complex64, omega: f64, t: f64) -> Complex64 {
    let iw = Complex64::new(0.0, omega);
    let diff = sp - sm;
    (sp + iw) / diff * (sp * t).exp() - (sm + iw) / diff * (sm * t).exp()
}

/// Reference solution of the removed-mode equation that never touches `s±`: the
/// memory integral `z(t) = ∫₀ᵗ e^{−iω(t−t′)} a(t′) dt′` becomes a second state
/// variable, `ż = a − iωz`, and the pair is integrated with classical RK4.
pub fn removed_mode_amplitude_ode(p: &RemovedModeParams, t: f64, steps: usize) -> Result<Complex64> {
    p.check_time(t)?;
    if steps == 0 {
        return Err(invalid("ODE oracle needs at least one step"));
    }
    let g2 = p.coupling_sq();
    let half_gamma = 0.5 * p.gamma;
    let iw = Complex64::new(0.0, p.omega);
    let rhs = |a: Complex64, z: Complex64| (-half_gamma * a + g2 * z, a - iw * z);
    let h = t / steps as f64;
    let (mut a, mut z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    for _ in 0..steps {
        let (ka1, kz1) = rhs(a, z);
        let (ka2, kz2) = rhs(a + 0.5 * h * ka1, z + 0.5 * h * kz1);
        let (ka3, kz3) = rhs(a + 0.5 * h * ka2, z + 0.5 * h * kz2);
        let (ka4, kz4) = rhs(a + h * ka3, z + h * kz3);
        a += h / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        z += h / 6.0 * (kz1 + 2.0 * kz2 + 2.0 * kz3 + kz4);
    }
    Ok(a)
}

/// Influence of removing the mode at `ω`: `∫₀ᵀ 2(|a(t)|² − e^{−γt})² dt`.
///
/// The Simpson grid starts from `quad` and is refined to resolve oscillations at `|ω|`.
pub fn influence_analytic(p: &RemovedModeParams, t_max: f64, quad: &QuadratureConfig) -> Result<f64> {
    p.check_time(t_max)?;
    if p.delta == 0.0 {
        return Ok(0.0);
    }
    let (sp, sm) = p.rates()?;
    let grid = quad.resolved_grid(t_max, p.omega.abs() + p.gamma)?;
    let integrand: Vec<f64> = grid
        .times()
        .map(|t| {
            let diff = amplitude_from_rates(sp, sm, p.omega, t).norm_sqr() - continuum_n(p.gamma, t);
            2.0 * diff * diff
        })
        .collect();
    simpson(&integrand, grid.step())
}

/// [`influence_analytic`] at each frequency in `omegas`, paired with that frequency.
pub fn influence_scan(
    gamma: f64,
    delta: f64,
    t_max: f64,
    omegas: &[f64],
    quad: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    omegas
        .par_iter()
        .map(|&w| {
            let p = RemovedModeParams::new(gamma, delta, w)?;
            // Nudge off the confluent point rather than fail.
            let value = match influence_analytic(&p, t_max, quad) {
                Err(Error::ConfluentRoots { .. }) => {
                    let nudged = RemovedModeParams::new(gamma, delta, w + 1e-9)?;
                    influence_analytic(&nudged, t_max, quad)?
                }
                other => other?,
            };
            Ok((w, value))
        })
        .collect()
}

/// Largest scanned `|ω|` whose influence is still at least half of the influence
/// at the first scan point (normally `ω = 0`). Scans must be ascending.
pub fn plateau_half_width(scan: &[(f64, f64)]) -> Option<f64> {
    let &(_, peak) = scan.first()?;
    scan.iter()
        .filter(|(_, i)| *i >= 0.5 * peak)
        .map(|(w, _)| w.abs())
        .fold(None, |acc: Option<f64>, w| Some(acc.map_or(w, |a| a.max(w))))
}

/// Leading-order error of truncating a flat band at `±ω_c`: `(5/2γ)(γ/πω_c)²`.
pub fn cutoff_error(gamma: f64, omega_c: f64) -> f64 {
    2.5 / gamma * (gamma / (PI * omega_c)).powi(2)
}
