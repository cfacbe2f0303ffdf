//! Command-line front end: build baths, propagate them, scan mode influence,
//! sweep mode counts and fit power laws. All output files are CSV.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use envdisc::harness::{lin_space, log_space, DEFAULT_FIT_SKIP};
use envdisc::io::{read_sweep, write_bath, write_sweep, write_table, write_trajectory};
use envdisc::measures::influence_numeric_with;
use envdisc::*;

#[derive(Parser)]
#[command(version, about = "Discrete-mode baths for continuum environments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a discrete bath and write it as `omega,coupling`
    Discretize(DiscretizeArgs),
    /// Evolve a cavity mode coupled to a bath file and write `t,n`
    Propagate(PropagateArgs),
    /// Single-mode influence over a frequency range, written as `omega,influence`
    Influence(InfluenceArgs),
    /// Error versus mode count for one scheme, written as `scheme,n,epsilon`
    Sweep(SweepArgs),
    /// Log-log fit of a sweep file
    Fit(FitArgs),
    /// Closed-form influence for several horizons, written as `t_max,omega,influence`
    Figure2(Figure2Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Dense,
    Arrowhead,
}

impl From<Solver> for Eigensolver {
    fn from(s: Solver) -> Self {
        match s {
            Solver::Dense => Eigensolver::Dense,
            Solver::Arrowhead => Eigensolver::Arrowhead,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InfluenceMode {
    Analytic,
    Numeric,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("parameter").required(true))]
struct DiscretizeArgs {
    #[arg(long)]
    scheme: SchemeTag,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    t_max: f64,
    /// Band edge (linear scheme)
    #[arg(long, group = "parameter")]
    omega_c: Option<f64>,
    /// Curvature of the spacing (influence and generalized schemes)
    #[arg(long, group = "parameter")]
    d: Option<f64>,
    /// Ramp slope (linear-ramp scheme)
    #[arg(long, group = "parameter")]
    d1: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PropagateArgs {
    #[arg(long)]
    bath: PathBuf,
    #[arg(long)]
    t_max: f64,
    #[arg(long)]
    samples: usize,
    #[arg(long, value_enum, default_value = "dense")]
    solver: Solver,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InfluenceArgs {
    #[arg(long, value_enum)]
    mode: InfluenceMode,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega_max: f64,
    #[arg(long)]
    points: usize,
    /// Give the removed mode's weight to its neighbours (numeric mode only)
    #[arg(long)]
    redistribute: bool,
    /// Band edge of the numeric bath [default: max |ω| + 10γ]
    #[arg(long)]
    omega_c: Option<f64>,
    /// Minimum Simpson sample count (odd)
    #[arg(long, default_value_t = 2001)]
    samples: usize,
    /// Space the frequencies logarithmically (needs a positive range)
    #[arg(long)]
    log_spaced: bool,
    #[arg(long, value_enum, default_value = "arrowhead")]
    solver: Solver,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    scheme: SchemeTag,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    targets: Vec<usize>,
    /// Minimum Simpson sample count (odd)
    #[arg(long, default_value_t = 2001)]
    samples: usize,
    #[arg(long, value_enum, default_value = "arrowhead")]
    solver: Solver,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Records with the smallest mode counts left out of the fit
    #[arg(long, default_value_t = DEFAULT_FIT_SKIP)]
    skip_smallest: usize,
}

#[derive(Args)]
struct Figure2Args {
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    t_values: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega_max: f64,
    #[arg(long)]
    points: usize,
    #[arg(long)]
    log_spaced: bool,
    #[arg(long, default_value_t = 2001)]
    samples: usize,
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

fn frequencies(lo: f64, hi: f64, points: usize, log_spaced: bool) -> std::result::Result<Vec<f64>, Failure> {
    if points == 0 || lo > hi {
        return Err(usage("need --points >= 1 and --omega-min <= --omega-max"));
    }
    if log_spaced {
        if lo <= 0.0 {
            return Err(usage("--log-spaced needs --omega-min > 0"));
        }
        return Ok(log_space(lo, hi, points));
    }
    Ok(lin_space(lo, hi, points))
}

fn discretize_cmd(a: DiscretizeArgs) -> CliResult {
    let density = SpectralDensity::flat(a.gamma)?;
    let kind = match (a.scheme, a.omega_c, a.d, a.d1) {
        (SchemeTag::Linear, Some(omega_c), None, None) => SchemeKind::Linear { omega_c },
        (SchemeTag::Influence, None, Some(d), None) => SchemeKind::Influence { d },
        (SchemeTag::Generalized, None, Some(d), None) => SchemeKind::Generalized { d },
        (SchemeTag::LinearRamp, None, None, Some(d1)) => SchemeKind::LinearRamp { d1 },
        (tag, ..) => {
            let flag = match tag {
                SchemeTag::Linear => "--omega-c",
                SchemeTag::Influence | SchemeTag::Generalized => "--d",
                SchemeTag::LinearRamp => "--d1",
            };
            return Err(usage(format!("scheme '{tag}' takes {flag}")));
        }
    };
    let scheme = DiscretizationScheme::new(kind, a.t_max)?;
    let bath = discretize(&scheme, &density)?;
    write_bath(create(&a.out)?, &bath)?;
    eprintln!("{} modes written to {}", bath.len(), a.out.display());
    Ok(())
}

fn propagate_cmd(a: PropagateArgs) -> CliResult {
    let bath = envdisc::io::read_bath(open(&a.bath)?)?;
    let grid = TimeGrid::new(a.t_max, a.samples)?;
    let traj = propagate_with(&bath, &grid, a.solver.into())?;
    write_trajectory(create(&a.out)?, &traj)?;
    Ok(())
}

fn influence_cmd(a: InfluenceArgs) -> CliResult {
    let omegas = frequencies(a.omega_min, a.omega_max, a.points, a.log_spaced)?;
    let quad = QuadratureConfig::new(a.samples)?;
    let rows: Vec<Vec<f64>> = match a.mode {
        InfluenceMode::Analytic => {
            if a.redistribute {
                return Err(usage("--redistribute applies to --mode numeric only"));
            }
            influence_scan(a.gamma, a.delta, a.t_max, &omegas, &quad)?
                .into_iter()
                .map(|(w, i)| vec![w, i])
                .collect()
        }
        InfluenceMode::Numeric => {
            let reach = a.omega_min.abs().max(a.omega_max.abs());
            let omega_c = a.omega_c.unwrap_or(reach + 10.0 * a.gamma);
            if omega_c < reach {
                return Err(usage("--omega-c must cover the scanned frequencies"));
            }
            let bath = uniform_bath(&SpectralDensity::flat(a.gamma)?, a.delta, omega_c)?;
            let grid = quad.resolved_grid(a.t_max, bath.max_abs_frequency() + a.gamma)?;
            let removal = if a.redistribute { Removal::Redistribute } else { Removal::Delete };
            let mut indices: Vec<usize> = omegas.iter().filter_map(|&w| bath.nearest(w)).collect();
            indices.dedup();
            let mut rows = Vec::with_capacity(indices.len());
            for i in indices {
                let value = influence_numeric_with(&bath, i, &grid, removal, a.solver.into())?;
                rows.push(vec![bath.modes()[i].omega, value]);
            }
            rows
        }
    };
    write_table(create(&a.out)?, &["omega", "influence"], rows)?;
    Ok(())
}

fn sweep_cmd(a: SweepArgs) -> CliResult {
    if a.targets.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("--targets must be strictly ascending"));
    }
    let config = SweepConfig::new(a.gamma, a.t_max)
        .with_quadrature(QuadratureConfig::new(a.samples)?)
        .with_solver(a.solver.into());
    let records = run_sweep(a.scheme, &a.targets, &config)?;
    write_sweep(create(&a.out)?, &records)?;
    Ok(())
}

fn fit_cmd(a: FitArgs) -> CliResult {
    let records = read_sweep(open(&a.input)?)?;
    let fit = fit_window(&records, a.skip_smallest)?;
    println!("slope={} intercept={} r2={}", fit.slope, fit.intercept, fit.r_squared);
    Ok(())
}

fn figure2_cmd(a: Figure2Args) -> CliResult {
    let omegas = frequencies(a.omega_min, a.omega_max, a.points, a.log_spaced)?;
    let quad = QuadratureConfig::new(a.samples)?;
    let rows = figure2_data(a.gamma, a.delta, &a.t_values, &omegas, &quad)?;
    write_table(
        create(&a.out)?,
        &["t_max", "omega", "influence"],
        rows.into_iter().map(|r| vec![r.t_max, r.omega, r.influence]),
    )?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Discretize(a) => discretize_cmd(a),
        Command::Propagate(a) => propagate_cmd(a),
        Command::Influence(a) => influence_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Fit(a) => fit_cmd(a),
        Command::Figure2(a) => figure2_cmd(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
