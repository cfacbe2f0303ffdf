use envdisc::harness::{scheme_error, DEFAULT_FIT_SKIP};
use envdisc::measures::influence_numeric_with;
use envdisc::{
    DiscreteBath, DiscretizationScheme, Eigensolver, Error, QuadratureConfig, Removal,
    RemovedModeParams, SchemeKind, SchemeTag, SpectralDensity, SweepConfig, SweepRecord, TimeGrid,
};
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        e if e.is_numerical() => PyArithmeticError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn solver(name: &str) -> PyResult<Eigensolver> {
    match name {
        "dense" => Ok(Eigensolver::Dense),
        "arrowhead" => Ok(Eigensolver::Arrowhead),
        other => Err(PyValueError::new_err(format!("unknown solver '{other}'"))),
    }
}

fn tag(name: &str) -> PyResult<SchemeTag> {
    name.parse().map_err(to_py)
}

/// A finite set of bath modes `(omega, coupling)`, sorted by frequency.
#[pyclass(name = "DiscreteBath", module = "envdisc_py", frozen)]
struct PyBath {
    inner: DiscreteBath,
}

#[pymethods]
impl PyBath {
    #[new]
    fn new(omegas: Vec<f64>, couplings: Vec<f64>) -> PyResult<Self> {
        if omegas.len() != couplings.len() {
            return Err(PyValueError::new_err("omegas and couplings differ in length"));
        }
        let inner = DiscreteBath::from_pairs(omegas.into_iter().zip(couplings)).map_err(to_py)?;
        Ok(PyBath { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyBath { inner: envdisc::io::load_bath(path).map_err(to_py)? })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        envdisc::io::save_bath(path, &self.inner).map_err(to_py)
    }

    #[getter]
    fn omegas(&self) -> Vec<f64> {
        self.inner.frequencies().collect()
    }

    #[getter]
    fn couplings(&self) -> Vec<f64> {
        self.inner.modes().iter().map(|m| m.coupling).collect()
    }

    /// Total weight `Σ G²`.
    fn weight(&self) -> f64 {
        self.inner.weight()
    }

    fn nearest(&self, omega: f64) -> Option<usize> {
        self.inner.nearest(omega)
    }

    fn without(&self, index: usize) -> PyResult<Self> {
        Ok(PyBath { inner: self.inner.without(index).map_err(to_py)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("DiscreteBath(modes={}, weight={})", self.inner.len(), self.inner.weight())
    }
}

/// Discretize a flat band of decay rate `gamma`. Pass `omega_c` for the linear
/// scheme, `d` for influence or generalized, and `d1` for linear-ramp.
#[pyfunction]
#[pyo3(signature = (scheme, gamma, t_max, *, omega_c=None, d=None, d1=None))]
fn discretize(
    scheme: &str,
    gamma: f64,
    t_max: f64,
    omega_c: Option<f64>,
    d: Option<f64>,
    d1: Option<f64>,
) -> PyResult<PyBath> {
    let kind = match (tag(scheme)?, omega_c, d, d1) {
        (SchemeTag::Linear, Some(omega_c), None, None) => SchemeKind::Linear { omega_c },
        (SchemeTag::Influence, None, Some(d), None) => SchemeKind::Influence { d },
        (SchemeTag::Generalized, None, Some(d), None) => SchemeKind::Generalized { d },
        (SchemeTag::LinearRamp, None, None, Some(d1)) => SchemeKind::LinearRamp { d1 },
        (t, ..) => return Err(PyValueError::new_err(format!("wrong parameter for scheme '{t}'"))),
    };
    let density = SpectralDensity::flat(gamma).map_err(to_py)?;
    let scheme = DiscretizationScheme::new(kind, t_max).map_err(to_py)?;
    Ok(PyBath { inner: envdisc::discretize(&scheme, &density).map_err(to_py)? })
}

/// Scheme tuned to produce about `target` modes, discretized.
#[pyfunction]
fn bath_with_modes(scheme: &str, target: usize, gamma: f64, t_max: f64) -> PyResult<PyBath> {
    let density = SpectralDensity::flat(gamma).map_err(to_py)?;
    let s = envdisc::mode_count_for_error(tag(scheme)?, target, t_max, &density).map_err(to_py)?;
    Ok(PyBath { inner: envdisc::discretize(&s, &density).map_err(to_py)? })
}

#[pyfunction]
fn uniform_bath(gamma: f64, delta: f64, omega_c: f64) -> PyResult<PyBath> {
    let density = SpectralDensity::flat(gamma).map_err(to_py)?;
    Ok(PyBath { inner: envdisc::uniform_bath(&density, delta, omega_c).map_err(to_py)? })
}

/// Cavity occupation on `samples` evenly spaced times in `[0, t_max]`; returns `(t, n)`.
#[pyfunction]
#[pyo3(signature = (bath, t_max, samples, solver_name="dense"))]
fn propagate(bath: &PyBath, t_max: f64, samples: usize, solver_name: &str) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let grid = TimeGrid::new(t_max, samples).map_err(to_py)?;
    let traj = envdisc::propagate_with(&bath.inner, &grid, solver(solver_name)?).map_err(to_py)?;
    Ok((grid.times().collect(), traj.values().to_vec()))
}

#[pyfunction]
fn continuum_n(gamma: f64, t: f64) -> f64 {
    envdisc::continuum_n(gamma, t)
}

#[pyfunction]
fn cutoff_error(gamma: f64, omega_c: f64) -> f64 {
    envdisc::cutoff_error(gamma, omega_c)
}

/// Error measure between two occupation series sampled on the same grid over `[0, t_max]`.
#[pyfunction]
fn error_measure(a: Vec<f64>, b: Vec<f64>, t_max: f64) -> PyResult<f64> {
    let traj = |v: Vec<f64>| {
        TimeGrid::new(t_max, v.len()).and_then(|g| envdisc::Trajectory::new(g, v))
    };
    let (a, b) = (traj(a).map_err(to_py)?, traj(b).map_err(to_py)?);
    envdisc::error_measure(&a, &b).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (gamma, delta, omega, t_max, samples=2001))]
fn influence_analytic(gamma: f64, delta: f64, omega: f64, t_max: f64, samples: usize) -> PyResult<f64> {
    let p = RemovedModeParams::new(gamma, delta, omega).map_err(to_py)?;
    let quad = QuadratureConfig::new(samples).map_err(to_py)?;
    envdisc::influence_analytic(&p, t_max, &quad).map_err(to_py)
}

/// Influence of mode `index` of `bath` over `[0, t_max]`.
#[pyfunction]
#[pyo3(signature = (bath, index, t_max, samples=2001, redistribute=false, solver_name="arrowhead"))]
fn influence_numeric(
    bath: &PyBath,
    index: usize,
    t_max: f64,
    samples: usize,
    redistribute: bool,
    solver_name: &str,
) -> PyResult<f64> {
    let quad = QuadratureConfig::new(samples).map_err(to_py)?;
    let grid = quad.resolved_grid(t_max, bath.inner.max_abs_frequency() + bath.inner.weight().sqrt()).map_err(to_py)?;
    let removal = if redistribute { Removal::Redistribute } else { Removal::Delete };
    influence_numeric_with(&bath.inner, index, &grid, removal, solver(solver_name)?).map_err(to_py)
}

fn sweep_config(gamma: f64, t_max: f64, samples: usize, solver_name: &str) -> PyResult<SweepConfig> {
    Ok(SweepConfig::new(gamma, t_max)
        .with_quadrature(QuadratureConfig::new(samples).map_err(to_py)?)
        .with_solver(solver(solver_name)?))
}

/// `(n, epsilon)` for each target mode count; runs without holding the GIL.
#[pyfunction]
#[pyo3(signature = (scheme, targets, gamma=1.0, t_max=10.0, samples=2001, solver_name="arrowhead"))]
fn run_sweep(
    py: Python<'_>,
    scheme: &str,
    targets: Vec<usize>,
    gamma: f64,
    t_max: f64,
    samples: usize,
    solver_name: &str,
) -> PyResult<Vec<(usize, f64)>> {
    let tag = tag(scheme)?;
    let config = sweep_config(gamma, t_max, samples, solver_name)?;
    let records = py.detach(|| envdisc::run_sweep(tag, &targets, &config)).map_err(to_py)?;
    Ok(records.into_iter().map(|r| (r.n, r.epsilon)).collect())
}

/// Error of the bath built for about `target` modes: `(n, epsilon)`.
#[pyfunction]
#[pyo3(signature = (scheme, target, gamma=1.0, t_max=10.0, samples=2001, solver_name="arrowhead"))]
fn scheme_error_at(
    scheme: &str,
    target: usize,
    gamma: f64,
    t_max: f64,
    samples: usize,
    solver_name: &str,
) -> PyResult<(usize, f64)> {
    let config = sweep_config(gamma, t_max, samples, solver_name)?;
    let density = SpectralDensity::flat(gamma).map_err(to_py)?;
    let s = envdisc::mode_count_for_error(tag(scheme)?, target, t_max, &density).map_err(to_py)?;
    let r = scheme_error(&s, &config).map_err(to_py)?;
    Ok((r.n, r.epsilon))
}

/// Least-squares line through `(log10 n, log10 epsilon)`, dropping the `skip` smallest `n`.
/// Returns `(slope, intercept, r_squared)`.
#[pyfunction]
#[pyo3(signature = (ns, epsilons, skip=DEFAULT_FIT_SKIP))]
fn fit_loglog(ns: Vec<usize>, epsilons: Vec<f64>, skip: usize) -> PyResult<(f64, f64, f64)> {
    if ns.len() != epsilons.len() {
        return Err(PyValueError::new_err("ns and epsilons differ in length"));
    }
    let records: Vec<SweepRecord> = ns
        .into_iter()
        .zip(epsilons)
        .map(|(n, epsilon)| SweepRecord { scheme: SchemeTag::Linear, n, epsilon })
        .collect();
    let fit = envdisc::fit_window(&records, skip).map_err(to_py)?;
    Ok((fit.slope, fit.intercept, fit.r_squared))
}

#[pymodule]
fn envdisc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBath>()?;
    m.add_function(wrap_pyfunction!(discretize, m)?)?;
    m.add_function(wrap_pyfunction!(bath_with_modes, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_bath, m)?)?;
    m.add_function(wrap_pyfunction!(propagate, m)?)?;
    m.add_function(wrap_pyfunction!(continuum_n, m)?)?;
    m.add_function(wrap_pyfunction!(cutoff_error, m)?)?;
    m.add_function(wrap_pyfunction!(error_measure, m)?)?;
    m.add_function(wrap_pyfunction!(influence_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(influence_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(scheme_error_at, m)?)?;
    m.add_function(wrap_pyfunction!(fit_loglog, m)?)?;
    Ok(())
}
