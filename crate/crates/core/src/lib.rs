//! Finite discrete-mode representations of continuum environments.
//!
//! A bath with spectral density `J(ω)` is replaced by a finite set of modes
//! `{(ω_i, G_i)}`. The crate builds such sets (evenly spaced, or with spacing
//! that grows like `ω²` where modes matter less), evolves a decaying cavity
//! mode coupled to them exactly in the single-excitation sector, and measures
//! how far the result is from continuum decay.

pub mod analytic;
pub mod bath;
pub mod discretize;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod harness;
pub mod io;
pub mod measures;
pub mod propagate;
pub mod quadrature;

pub use analytic::{
    continuum_n, cutoff_error, influence_analytic, influence_scan, plateau_half_width,
    removed_mode_amplitude, removed_mode_amplitude_ode, RemovedModeParams,
};
pub use bath::{DiscreteBath, Mode, SpectralDensity};
pub use discretize::{
    discretize, mode_count_for_error, uniform_bath, DiscretizationScheme, SchemeKind, SchemeTag,
};
pub use eigen::{EigenSystem, Eigensolver};
pub use error::{Error, Result};
pub use grid::{TimeGrid, Trajectory};
pub use harness::{
    figure2_data, fit_loglog, fit_power_law, fit_window, run_sweep, FitResult, InfluenceRow,
    SweepConfig, SweepRecord,
};
pub use measures::{error_measure, influence_numeric, influence_numeric_with, remove_mode, Removal};
pub use propagate::{
    build_star, propagate, propagate_ode_oracle, propagate_with, reduced_density, ReducedDensity,
    StarHamiltonian,
};
pub use quadrature::QuadratureConfig;
