//! CSV files: baths (`omega,coupling`), trajectories (`t,n`), sweeps
//! (`scheme,n,epsilon`) and generic numeric tables.
//!
//! Numbers are written in scientific notation with 17 significant digits, which
//! round-trips every `f64`. Lines end in LF.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::bath::{DiscreteBath, Mode};
use crate::discretize::SchemeTag;
use crate::error::{Error, Result};
use crate::grid::{TimeGrid, Trajectory};
use crate::harness::SweepRecord;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn reader<R: Read>(r: R, expected: &[&str]) -> Result<csv::Reader<R>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != expected {
        return Err(Error::Format(format!(
            "expected header '{}', found '{}'",
            expected.join(","),
            header.join(",")
        )));
    }
    Ok(rdr)
}

fn parse_f64(field: &str, line: u64) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::Format(format!("line {line}: '{field}' is not a number")))
}

/// Writes a table of numbers under `header`.
pub fn write_table<W: Write>(w: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(row.into_iter().map(fmt_f64))?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a numeric table whose header must equal `header`.
pub fn read_table<R: Read>(r: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = reader(r, header)?;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        rows.push(rec.iter().map(|f| parse_f64(f, line)).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}

pub fn write_bath<W: Write>(w: W, bath: &DiscreteBath) -> Result<()> {
    write_table(w, &["omega", "coupling"], bath.modes().iter().map(|m| vec![m.omega, m.coupling]))
}

pub fn read_bath<R: Read>(r: R) -> Result<DiscreteBath> {
    let modes = read_table(r, &["omega", "coupling"])?
        .into_iter()
        .map(|row| Mode::new(row[0], row[1]))
        .collect::<Result<Vec<_>>>()?;
    DiscreteBath::new(modes)
}

pub fn write_trajectory<W: Write>(w: W, traj: &Trajectory) -> Result<()> {
    write_table(w, &["t", "n"], traj.samples().map(|(t, n)| vec![t, n]))
}

/// Reads a trajectory, recovering its grid from the sample times.
pub fn read_trajectory<R: Read>(r: R) -> Result<Trajectory> {
    let rows = read_table(r, &["t", "n"])?;
    let (times, values): (Vec<f64>, Vec<f64>) = rows.into_iter().map(|r| (r[0], r[1])).unzip();
    let t_max = *times.last().ok_or_else(|| Error::Format("empty trajectory".into()))?;
    let grid = TimeGrid::new(t_max, times.len())?;
    for (j, &t) in times.iter().enumerate() {
        if (t - grid.time(j)).abs() > 1e-9 * t_max.max(1.0) {
            return Err(Error::Format(format!("sample {j} at t = {t} is off the uniform grid")));
        }
    }
    Trajectory::new(grid, values)
}

pub fn write_sweep<W: Write>(w: W, records: &[SweepRecord]) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(["scheme", "n", "epsilon"])?;
    for r in records {
        wtr.write_record([r.scheme.as_str().to_owned(), r.n.to_string(), fmt_f64(r.epsilon)])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_sweep<R: Read>(r: R) -> Result<Vec<SweepRecord>> {
    let mut rdr = reader(r, &["scheme", "n", "epsilon"])?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let scheme: SchemeTag = rec[0].parse()?;
        let n = rec[1]
            .parse()
            .map_err(|_| Error::Format(format!("line {line}: '{}' is not a mode count", &rec[1])))?;
        out.push(SweepRecord { scheme, n, epsilon: parse_f64(&rec[2], line)? });
    }
    Ok(out)
}

pub fn save_bath(path: impl AsRef<Path>, bath: &DiscreteBath) -> Result<()> {
    write_bath(File::create(path)?, bath)
}

pub fn load_bath(path: impl AsRef<Path>) -> Result<DiscreteBath> {
    read_bath(File::open(path)?)
}
