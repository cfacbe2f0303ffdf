//! Mappings from a spectral density to a finite set of modes.
//!
//! The linear scheme places modes evenly at `2π/T` inside `[−ω_c, ω_c]`. The
//! influence scheme and its two variants grow the spacing with frequency,
//! starting from `Δ₀ = π/T` at zero detuning:
//!
//! | scheme        | spacing `Δ(ω)`     | cutoff                     |
//! |---------------|--------------------|----------------------------|
//! | `Influence`   | `Δ₀ + dω²`         | `c/d`                      |
//! | `LinearRamp`  | `Δ₀ + d₁\|ω\|`     | `min(Δ₀ e^{1/d₁}, 10⁴ Δ₀)` |
//! | `Generalized` | `Δ₀ + dω²/J(ω)`    | `c/d`                      |
//!
//! with `c` the cutoff factor (default 1). Positive-frequency modes are placed
//! from `ω₀ = 0` by midpoint steps, `ω_{k+1} − ω_k = Δ((ω_k + ω_{k+1})/2)`, and
//! mirrored to negative frequencies. Each coupling is `√(J(ω_i) w_i)` with
//! `w_i` the Voronoi width of mode `i`; the outermost cells extend to `±ω_c`,
//! so the widths tile the band and the total weight of a flat density equals
//! its band integral. Linear baths use `w_i = 2π/T` throughout.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::bath::{DiscreteBath, Mode, SpectralDensity};
use crate::error::{invalid, Error, Result};

/// Upper bound on the cutoff of the linear-ramp scheme, in units of `Δ₀`.
pub const LINEAR_RAMP_CAP: f64 = 1e4;

/// Refuse to build baths larger than this; the eigensolver could not handle them anyway.
const MAX_MODES: usize = 2_000_000;

/// Which discretization family, without its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeTag {
    Linear,
    Influence,
    LinearRamp,
    Generalized,
}

impl SchemeTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeTag::Linear => "linear",
            SchemeTag::Influence => "influence",
            SchemeTag::LinearRamp => "linear-ramp",
            SchemeTag::Generalized => "generalized",
        }
    }
}

impl fmt::Display for SchemeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(SchemeTag::Linear),
            "influence" => Ok(SchemeTag::Influence),
            "linear-ramp" => Ok(SchemeTag::LinearRamp),
            "generalized" => Ok(SchemeTag::Generalized),
            other => Err(invalid(format!("unknown scheme '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeKind {
    Linear { omega_c: f64 },
    Influence { d: f64 },
    LinearRamp { d1: f64 },
    Generalized { d: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretizationScheme {
    kind: SchemeKind,
    t_max: f64,
    cutoff_factor: f64,
}

impl DiscretizationScheme {
    pub fn new(kind: SchemeKind, t_max: f64) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(invalid(format!("time horizon must be finite and > 0, got {t_max}")));
        }
        let (name, value) = match kind {
            SchemeKind::Linear { omega_c } => ("omega_c", omega_c),
            SchemeKind::Influence { d } | SchemeKind::Generalized { d } => ("d", d),
            SchemeKind::LinearRamp { d1 } => ("d1", d1),
        };
        if !(value.is_finite() && value > 0.0) {
            return Err(invalid(format!("{name} must be finite and > 0, got {value}")));
        }
        Ok(DiscretizationScheme { kind, t_max, cutoff_factor: 1.0 })
    }

    pub fn linear(t_max: f64, omega_c: f64) -> Result<Self> {
        Self::new(SchemeKind::Linear { omega_c }, t_max)
    }

    pub fn influence(t_max: f64, d: f64) -> Result<Self> {
        Self::new(SchemeKind::Influence { d }, t_max)
    }

    pub fn linear_ramp(t_max: f64, d1: f64) -> Result<Self> {
        Self::new(SchemeKind::LinearRamp { d1 }, t_max)
    }

    pub fn generalized(t_max: f64, d: f64) -> Result<Self> {
        Self::new(SchemeKind::Generalized { d }, t_max)
    }

    /// Sets `c` in the cutoff `ω_c = c/d` of the influence and generalized schemes.
    pub fn with_cutoff_factor(mut self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(invalid(format!("cutoff factor must be finite and > 0, got {factor}")));
        }
        self.cutoff_factor = factor;
        Ok(self)
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn tag(&self) -> SchemeTag {
        match self.kind {
            SchemeKind::Linear { .. } => SchemeTag::Linear,
            SchemeKind::Influence { .. } => SchemeTag::Influence,
            SchemeKind::LinearRamp { .. } => SchemeTag::LinearRamp,
            SchemeKind::Generalized { .. } => SchemeTag::Generalized,
        }
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// `2π/T` for the linear scheme, `Δ₀ = π/T` otherwise.
    pub fn base_spacing(&self) -> f64 {
        match self.kind {
            SchemeKind::Linear { .. } => 2.0 * PI / self.t_max,
            _ => PI / self.t_max,
        }
    }

    pub fn cutoff(&self) -> f64 {
        let base = self.base_spacing();
        match self.kind {
            SchemeKind::Linear { omega_c } => omega_c,
            SchemeKind::Influence { d } | SchemeKind::Generalized { d } => self.cutoff_factor / d,
            SchemeKind::LinearRamp { d1 } => (base * (1.0 / d1).exp()).min(LINEAR_RAMP_CAP * base),
        }
    }

    pub fn spacing_at(&self, density: &SpectralDensity, omega: f64) -> Result<f64> {
        let base = self.base_spacing();
        match self.kind {
            SchemeKind::Linear { .. } => Ok(base),
            SchemeKind::Influence { d } => Ok(base + d * omega * omega),
            SchemeKind::LinearRamp { d1 } => Ok(base + d1 * omega.abs()),
            SchemeKind::Generalized { d } => {
                let j = density.evaluate(omega);
                if j <= 0.0 {
                    return Err(Error::VanishingDensity { omega });
                }
                Ok(base + d * omega * omega / j)
            }
        }
    }
}

/// Discretizes `density` according to `scheme`.
pub fn discretize(scheme: &DiscretizationScheme, density: &SpectralDensity) -> Result<DiscreteBath> {
    let omega_c = scheme.cutoff();
    let positive = match scheme.kind {
        SchemeKind::Linear { .. } => {
            let delta = scheme.base_spacing();
            let k_max = (omega_c / delta + 1e-9).floor() as usize;
            if k_max > MAX_MODES / 2 {
                return Err(invalid(format!("linear band of {k_max} positive modes is too large")));
            }
            (1..=k_max).map(|k| k as f64 * delta).collect::<Vec<_>>()
        }
        _ => {
            if omega_c < 3.0 * scheme.base_spacing() {
                return Err(Error::BandTooNarrow { modes: 0 });
            }
            midpoint_positions(scheme, density, omega_c)?
        }
    };

    let positions: Vec<f64> = positive
        .iter()
        .rev()
        .map(|w| -w)
        .chain(std::iter::once(0.0))
        .chain(positive.iter().copied())
        .collect();
    if positions.len() < 3 {
        return Err(Error::BandTooNarrow { modes: positions.len() });
    }
    let widths = match scheme.kind {
        SchemeKind::Linear { .. } => vec![scheme.base_spacing(); positions.len()],
        _ => voronoi_widths(&positions, omega_c),
    };
    let modes = positions
        .iter()
        .zip(&widths)
        .map(|(&w, &width)| Mode::new(w, (density.evaluate(w) * width).sqrt()))
        .collect::<Result<Vec<_>>>()?;
    DiscreteBath::new(modes)
}

/// Evenly spaced bath with spacing `delta` on `[−omega_c, omega_c]`, including zero.
pub fn uniform_bath(density: &SpectralDensity, delta: f64, omega_c: f64) -> Result<DiscreteBath> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(invalid(format!("spacing must be finite and > 0, got {delta}")));
    }
    // A linear scheme whose horizon makes 2π/T equal to the requested spacing.
    let scheme = DiscretizationScheme::linear(2.0 * PI / delta, omega_c)?;
    discretize(&scheme, density)
}

fn midpoint_positions(
    scheme: &DiscretizationScheme,
    density: &SpectralDensity,
    omega_c: f64,
) -> Result<Vec<f64>> {
    let mut positive = Vec::new();
    let mut omega = 0.0;
    while let Some(step) = midpoint_step(scheme, density, omega, omega_c)? {
        omega += step;
        positive.push(omega);
        if positive.len() > MAX_MODES / 2 {
            return Err(invalid("scheme parameters produce too many modes"));
        }
    }
    Ok(positive)
}

/// Smallest `s` with `s = Δ(ω + s/2)`, found by fixed-point iteration from
/// `s = Δ(ω)`; the first iterate is the one-shot midpoint correction
/// `Δ(ω + Δ(ω)/2)`. The iterates increase monotonically, so once `ω + s`
/// passes the cutoff no step fits in the band and `None` is returned.
fn midpoint_step(
    scheme: &DiscretizationScheme,
    density: &SpectralDensity,
    omega: f64,
    omega_c: f64,
) -> Result<Option<f64>> {
    let mut step = scheme.spacing_at(density, omega)?;
    for _ in 0..200 {
        if omega + step > omega_c {
            return Ok(None);
        }
        let next = scheme.spacing_at(density, omega + step / 2.0)?;
        if (next - step).abs() <= 1e-13 * next {
            return Ok((omega + next <= omega_c).then_some(next));
        }
        step = next;
    }
    Ok((omega + step <= omega_c).then_some(step))
}

/// Half the distance to each neighbour; the outermost modes reach out to `±omega_c`,
/// so the widths tile the band exactly.
fn voronoi_widths(positions: &[f64], omega_c: f64) -> Vec<f64> {
    let n = positions.len();
    (0..n)
        .map(|i| {
            let lo = if i > 0 { 0.5 * (positions[i] + positions[i - 1]) } else { -omega_c };
            let hi = if i + 1 < n { 0.5 * (positions[i + 1] + positions[i]) } else { omega_c };
            hi - lo
        })
        .collect()
}

/// `∫_{−ω_c}^{ω_c} dω / (Δ₀ + dω²)`, the continuum estimate of the influence-scheme mode count.
pub fn influence_count_estimate(base: f64, d: f64, omega_c: f64) -> f64 {
    2.0 / (base * d).sqrt() * (omega_c * (d / base).sqrt()).atan()
}

/// Exact mode count of a linear bath with cutoff `omega_c` on horizon `t_max`.
pub fn linear_mode_count(omega_c: f64, t_max: f64) -> usize {
    2 * (omega_c * t_max / (2.0 * PI) + 1e-9).floor() as usize + 1
}

/// Relative deviation from the target count accepted by [`mode_count_for_error`].
pub const COUNT_TOLERANCE: f64 = 0.05;

fn count_ok(realized: usize, target: usize) -> bool {
    // Symmetric baths always hold an odd number of modes, so allow one mode of slack too.
    let slack = (COUNT_TOLERANCE * target as f64).max(1.0);
    (realized as f64 - target as f64).abs() <= slack
}

/// Chooses the scheme parameter so that the discretized bath has about `target` modes.
pub fn mode_count_for_error(
    tag: SchemeTag,
    target: usize,
    t_max: f64,
    density: &SpectralDensity,
) -> Result<DiscretizationScheme> {
    if target < 3 {
        return Err(Error::UnsatisfiableTarget {
            target,
            reason: "at least 3 modes are required".into(),
        });
    }
    let realized = |s: &DiscretizationScheme| discretize(s, density).map(|b| b.len());

    let scheme = match tag {
        SchemeTag::Linear => {
            let omega_c = (target - 1) as f64 / 2.0 * 2.0 * PI / t_max;
            DiscretizationScheme::linear(t_max, omega_c)?
        }
        SchemeTag::Influence => {
            let base = PI / t_max;
            let d = solve_influence_count(base, target as f64)?;
            let guess = DiscretizationScheme::influence(t_max, d)?;
            match realized(&guess) {
                Ok(n) if count_ok(n, target) => guess,
                _ => refine_by_count(target, d, |d| DiscretizationScheme::influence(t_max, d), density)?,
            }
        }
        SchemeTag::Generalized => {
            // For a density evaluated at zero, dω²/J matches the influence scheme with d·2π/γ.
            let base = PI / t_max;
            let j0 = density.evaluate(0.0);
            let d = solve_influence_count(base, target as f64)? * j0;
            refine_by_count(target, d, |d| DiscretizationScheme::generalized(t_max, d), density)?
        }
        SchemeTag::LinearRamp => {
            refine_by_count(target, 0.1, |d1| DiscretizationScheme::linear_ramp(t_max, d1), density)?
        }
    };
    let n = realized(&scheme)?;
    if !count_ok(n, target) {
        return Err(Error::UnsatisfiableTarget {
            target,
            reason: format!("closest realizable bath has {n} modes"),
        });
    }
    Ok(scheme)
}

/// Solves `influence_count_estimate(base, d, 1/d) = target` for `d` by bisection in `log d`.
fn solve_influence_count(base: f64, target: f64) -> Result<f64> {
    let count = |d: f64| influence_count_estimate(base, d, 1.0 / d);
    // The count decreases monotonically in d.
    let (mut lo, mut hi) = (1e-14_f64.ln(), 1e6_f64.ln());
    if count(lo.exp()) < target || count(hi.exp()) > target {
        return Err(Error::UnsatisfiableTarget {
            target: target as usize,
            reason: "outside the searchable curvature range".into(),
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid.exp()) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Bisects the scheme parameter (in log space) on the realized mode count, which
/// decreases as the parameter grows. Returns the scheme whose count is closest to
/// `target`.
fn refine_by_count(
    target: usize,
    guess: f64,
    make: impl Fn(f64) -> Result<DiscretizationScheme>,
    density: &SpectralDensity,
) -> Result<DiscretizationScheme> {
    // Parameters that fail to discretize (band too narrow) count as zero modes.
    let count = |p: f64| -> Result<usize> {
        let s = make(p)?;
        Ok(discretize(&s, density).map(|b| b.len()).unwrap_or(0))
    };
    let mut lo = guess.ln() - 2.0;
    let mut hi = guess.ln() + 2.0;
    for _ in 0..60 {
        if count(lo.exp())? >= target {
            break;
        }
        lo -= 2.0;
    }
    for _ in 0..60 {
        if count(hi.exp())? <= target {
            break;
        }
        hi += 2.0;
    }
    let mut best = (usize::MAX, guess);
    let mut consider = |p: f64, n: usize| {
        let gap = n.abs_diff(target);
        if gap < best.0 {
            best = (gap, p);
        }
    };
    consider(lo.exp(), count(lo.exp())?);
    consider(hi.exp(), count(hi.exp())?);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let n = count(mid.exp())?;
        consider(mid.exp(), n);
        if n == target {
            break;
        }
        if n > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    make(best.1)
}
