use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_envdisc")).args(args).output().unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn assert_csv_format(text: &str, header: &str) {
    assert!(text.starts_with(&format!("{header}\n")));
    assert!(!text.contains('\r'));
    for line in text.lines().skip(1) {
        for field in line.split(',').filter(|f| f.parse::<f64>().is_ok()) {
            let mantissa = field.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.replace('.', "").len(), 17, "field {field}");
        }
    }
}

#[test]
fn discretize_then_propagate() {
    let dir = tempfile::tempdir().unwrap();
    let bath = dir.path().join("bath.csv");
    let traj = dir.path().join("traj.csv");
    let out = run(&["discretize", "--scheme", "linear", "--gamma", "1", "--t-max", "6.283185307179586",
        "--omega-c", "10", "--out", arg(&bath)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&bath).unwrap();
    assert_csv_format(&text, "omega,coupling");
    assert_eq!(text.lines().count(), 22);

    let out = run(&["propagate", "--bath", arg(&bath), "--t-max", "2", "--samples", "21", "--out", arg(&traj)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&traj).unwrap();
    assert_csv_format(&text, "t,n");
    let first: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - 1.0).abs() < 1e-12);
}

#[test]
fn every_scheme_discretizes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bath.csv");
    for (scheme, flag, value) in [
        ("influence", "--d", "0.01"),
        ("generalized", "--d", "0.01"),
        ("linear-ramp", "--d1", "0.3"),
    ] {
        let out = run(&["discretize", "--scheme", scheme, "--gamma", "1", "--t-max", "10", flag, value,
            "--out", arg(&out_path)]);
        assert!(out.status.success(), "{scheme}");
        assert_csv_format(&fs::read_to_string(&out_path).unwrap(), "omega,coupling");
    }
}

#[test]
fn sweep_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = dir.path().join("sweep.csv");
    let out = run(&["sweep", "--scheme", "linear", "--gamma", "1", "--t-max", "10",
        "--targets", "16,32,64,128,256", "--out", arg(&sweep)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&sweep).unwrap();
    assert!(text.starts_with("scheme,n,epsilon\nlinear,15,"));
    assert_eq!(text.lines().count(), 6);

    let out = run(&["fit", "--in", arg(&sweep)]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<(&str, f64)> = stdout
        .trim()
        .split(' ')
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap();
            (k, v.parse().unwrap())
        })
        .collect();
    assert_eq!(fields.iter().map(|f| f.0).collect::<Vec<_>>(), ["slope", "intercept", "r2"]);
    assert!((-2.3..=-1.7).contains(&fields[0].1), "{stdout}");
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        let out = run(&["sweep", "--scheme", "influence", "--gamma", "1", "--t-max", "10",
            "--targets", "16,32,64", "--out", arg(p)]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
}

#[test]
fn influence_modes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("infl.csv");
    let out = run(&["influence", "--mode", "analytic", "--gamma", "1", "--delta", "0.05", "--t-max", "10",
        "--omega-min", "-2", "--omega-max", "2", "--points", "5", "--out", arg(&path)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_csv_format(&text, "omega,influence");
    let values: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 5);
    assert!((values[0] - values[4]).abs() <= 1e-10 * values[0]);

    for extra in [None, Some("--redistribute")] {
        let mut args = vec!["influence", "--mode", "numeric", "--gamma", "1", "--delta", "0.2", "--t-max", "5",
            "--omega-min", "0", "--omega-max", "4", "--points", "3", "--omega-c", "8", "--out", arg(&path)];
        args.extend(extra);
        let out = run(&args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 4);
    }
}

#[test]
fn figure2_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let out = run(&["figure2", "--gamma", "1", "--delta", "0.05", "--t-values", "2,10", "--omega-min", "1",
        "--omega-max", "100", "--points", "4", "--log-spaced", "--out", arg(&path)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_csv_format(&text, "t_max,omega,influence");
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.csv");
    let out = arg(&out_path);
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["bogus"],
        vec!["discretize", "--scheme", "linear", "--gamma", "1", "--t-max", "10", "--out", out],
        vec!["discretize", "--scheme", "linear", "--gamma", "1", "--t-max", "10", "--d", "0.1", "--out", out],
        vec!["discretize", "--scheme", "nope", "--gamma", "1", "--t-max", "10", "--omega-c", "5", "--out", out],
        vec!["discretize", "--scheme", "linear", "--gamma", "-1", "--t-max", "10", "--omega-c", "5", "--out", out],
        vec!["sweep", "--scheme", "linear", "--gamma", "1", "--t-max", "10", "--targets", "64,32", "--out", out],
        vec!["propagate", "--bath", "/nonexistent/bath.csv", "--t-max", "1", "--samples", "3", "--out", out],
        vec!["propagate", "--bath", out, "--t-max", "1", "--samples", "three", "--out", out],
    ];
    for args in cases {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    fs::write(&path, "scheme,n,epsilon\nlinear,15,1e-2\nlinear,31,0\nlinear,63,1e-4\n").unwrap();
    let out = run(&["fit", "--in", arg(&path), "--skip-smallest", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
