//! Convergence sweeps, power-law fits and influence tables.

use rayon::prelude::*;

use crate::analytic::{continuum_n, influence_scan};
use crate::bath::{DiscreteBath, SpectralDensity};
use crate::discretize::{discretize, mode_count_for_error, DiscretizationScheme, SchemeTag};
use crate::eigen::Eigensolver;
use crate::error::{invalid, Error, Result};
use crate::grid::Trajectory;
use crate::measures::error_measure;
use crate::propagate::propagate_with;
use crate::quadrature::QuadratureConfig;

/// Points dropped from the small-`N` end of a sweep before fitting a slope.
pub const DEFAULT_FIT_SKIP: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub scheme: SchemeTag,
    /// Realized mode count.
    pub n: usize,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub gamma: f64,
    pub t_max: f64,
    pub quad: QuadratureConfig,
    pub solver: Eigensolver,
}

impl SweepConfig {
    pub fn new(gamma: f64, t_max: f64) -> Self {
        SweepConfig { gamma, t_max, quad: QuadratureConfig::default(), solver: Eigensolver::default() }
    }

    pub fn with_quadrature(mut self, quad: QuadratureConfig) -> Self {
        self.quad = quad;
        self
    }

    pub fn with_solver(mut self, solver: Eigensolver) -> Self {
        self.solver = solver;
        self
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig::new(1.0, 10.0)
    }
}

/// Error of `bath` against continuum decay over `[0, T]`.
///
/// The quadrature grid is refined to resolve the highest bath frequency.
pub fn bath_error(bath: &DiscreteBath, config: &SweepConfig) -> Result<f64> {
    let grid = config
        .quad
        .resolved_grid(config.t_max, bath.max_abs_frequency() + config.gamma)?;
    let traj = propagate_with(bath, &grid, config.solver)?;
    let exact = Trajectory::from_fn(grid, |t| continuum_n(config.gamma, t))?;
    error_measure(&traj, &exact)
}

pub fn scheme_error(scheme: &DiscretizationScheme, config: &SweepConfig) -> Result<SweepRecord> {
    let density = SpectralDensity::flat(config.gamma)?;
    let bath = discretize(scheme, &density)?;
    Ok(SweepRecord { scheme: scheme.tag(), n: bath.len(), epsilon: bath_error(&bath, config)? })
}

/// One record per target mode count, in the order of `targets`.
pub fn run_sweep(tag: SchemeTag, targets: &[usize], config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    if targets.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("sweep targets must be strictly ascending"));
    }
    if let Some(&t) = targets.iter().find(|&&t| t < 3) {
        return Err(invalid(format!("sweep target {t} is below the 3-mode minimum")));
    }
    let density = SpectralDensity::flat(config.gamma)?;
    targets
        .par_iter()
        .map(|&target| {
            let scheme = mode_count_for_error(tag, target, config.t_max, &density)?;
            scheme_error(&scheme, config)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares line through `(log₁₀ x, log₁₀ y)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(invalid(format!("a log-log fit needs at least 3 points, got {}", points.len())));
    }
    if let Some(&(x, _)) = points.iter().find(|(x, _)| *x <= 0.0) {
        return Err(invalid(format!("abscissa {x} is not positive")));
    }
    if let Some(&(_, y)) = points.iter().find(|(_, y)| *y <= 0.0) {
        return Err(Error::NonPositiveError(y));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.log10(), y.log10())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("all abscissae are equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(FitResult { slope, intercept, r_squared })
}

pub fn fit_loglog(records: &[SweepRecord]) -> Result<FitResult> {
    let points: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.epsilon)).collect();
    fit_power_law(&points)
}

/// [`fit_loglog`] after dropping the `skip` smallest-`N` records.
pub fn fit_window(records: &[SweepRecord], skip: usize) -> Result<FitResult> {
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|r| r.n);
    fit_loglog(sorted.get(skip..).unwrap_or(&[]))
}

/// Smallest mode count for which `tag` reaches `epsilon <= target`, searched by
/// bisection on the target count in `[3, max_n]`. Assumes the error falls with `N`.
pub fn modes_to_reach(tag: SchemeTag, target: f64, max_n: usize, config: &SweepConfig) -> Result<Option<SweepRecord>> {
    let density = SpectralDensity::flat(config.gamma)?;
    let eval = |n: usize| -> Result<SweepRecord> {
        let scheme = mode_count_for_error(tag, n, config.t_max, &density)?;
        scheme_error(&scheme, config)
    };
    let top = eval(max_n)?;
    if top.epsilon > target {
        return Ok(None);
    }
    let (mut lo, mut hi, mut best) = (3usize, max_n, top);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let rec = eval(mid)?;
        if rec.epsilon <= target {
            hi = mid;
            if rec.n < best.n {
                best = rec;
            }
        } else {
            lo = mid;
        }
    }
    Ok(Some(best))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceRow {
    pub t_max: f64,
    pub omega: f64,
    pub influence: f64,
}

/// Analytic single-mode influence on `omegas` for each horizon in `t_values`.
pub fn figure2_data(
    gamma: f64,
    delta: f64,
    t_values: &[f64],
    omegas: &[f64],
    quad: &QuadratureConfig,
) -> Result<Vec<InfluenceRow>> {
    let mut rows = Vec::with_capacity(t_values.len() * omegas.len());
    for &t_max in t_values {
        for (omega, influence) in influence_scan(gamma, delta, t_max, omegas, quad)? {
            rows.push(InfluenceRow { t_max, omega, influence });
        }
    }
    Ok(rows)
}

/// `count` points from `lo` to `hi` inclusive, evenly spaced in the logarithm.
pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect()
        }
    }
}

/// `count` points from `lo` to `hi` inclusive, evenly spaced.
pub fn lin_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}
