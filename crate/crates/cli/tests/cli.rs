use std::process::{Command, Output};

fn jspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jspec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(N_r, domain, error)` rows of a convergence CSV.
fn parse_rows(csv_text: &str) -> Vec<(usize, String, f64)> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["N_r", "domain", "error", "seconds"]);
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[0].parse().unwrap(), rec[1].to_string(), rec[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn quadrature_dump_matches_closed_form() {
    let o = jspec(&["quadrature", "--alpha", "0", "--beta", "2", "--n", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect()).collect();
    let want = [[-1.0, 1.0 / 15.0], [1.0 / 3.0, 9.0 / 5.0], [1.0, 4.0 / 5.0]];
    for (row, w) in rows.iter().zip(want) {
        assert!((row[0] - w[0]).abs() < 1e-13 && (row[1] - w[1]).abs() < 1e-13, "{row:?}");
    }
    // 17 significant digits
    assert!(text.lines().nth(2).unwrap().contains("3.3333333333333331e-1"));
}

#[test]
fn chebyshev_dump_has_uniform_interior_weights() {
    let o = jspec(&["quadrature", "--alpha", "-0.5", "--beta", "-0.5", "--n", "8", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w: Vec<f64> = doc["weights"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(w.len(), 9);
    for x in &w[1..8] {
        assert!((x - std::f64::consts::PI / 8.0).abs() < 1e-13);
    }
    let o = jspec(&["quadrature", "--alpha", "0", "--beta", "2", "--n", "1"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn solve_reports_errors() {
    let o = jspec(&["solve", "--source", "zero", "--nr", "9", "--n-theta", "5", "--n-phi", "4"]);
    assert!(o.status.success());
    assert!(parse_rows(&stdout(&o)).iter().all(|r| r.2 == 0.0));

    let o = jspec(&["solve", "--source", "uniform-ball", "--nr", "17"]);
    let rows = parse_rows(&stdout(&o));
    assert_eq!(rows[0].1, "nucleus");
    assert!(rows[0].2 <= 1e-12, "{rows:?}");

    let o = jspec(&["solve", "--source", "smooth", "--nr", "33", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rec = &doc["records"][0];
    assert_eq!(rec["domain"], "nucleus");
    assert_eq!(rec["N_r"], 33);
    assert!(rec["error"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn tabulated_source_reproduces_built_in() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("source.txt");
    let field = dir.path().join("field.txt");
    let common = ["--nr", "9", "--n-theta", "5", "--n-phi", "8"];
    let mut args = vec!["grid", "--source", "smooth", "-o", table.to_str().unwrap()];
    args.extend(common);
    assert!(jspec(&args).status.success());
    let mut args =
        vec!["solve", "--source", "file", "--source-file", table.to_str().unwrap(), "-o", field.to_str().unwrap()];
    args.extend(common);
    assert!(jspec(&args).status.success());
    let from_file = std::fs::read_to_string(&field).unwrap();

    let direct = dir.path().join("direct.txt");
    let mut args = vec!["solve", "--source", "smooth", "--solution", direct.to_str().unwrap()];
    args.extend(common);
    assert!(jspec(&args).status.success());
    assert_eq!(from_file, std::fs::read_to_string(&direct).unwrap());
}

#[test]
fn converge_is_deterministic_and_fits_rates() {
    let args = ["converge", "--source", "sqrt", "--nr", "9,13,17", "--n-theta", "3", "--n-phi", "4", "--no-timing"];
    let a = jspec(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_jspec")).args(args).env("JSPEC_WORKERS", "1").output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let rows = parse_rows(&stdout(&a));
    assert_eq!(rows.len(), 9);
    assert!(rows.windows(2).all(|w| w[0].0 <= w[1].0));
    let summary = String::from_utf8(a.stderr).unwrap();
    assert!(summary.contains("fit basis=jacobi02 domain=nucleus algebraic_rate="), "{summary}");

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&jspec(&json_args).stdout).unwrap();
    let recs = doc["records"].as_array().unwrap();
    for (rec, row) in recs.iter().zip(&rows) {
        assert_eq!(rec["N_r"].as_u64().unwrap() as usize, row.0);
        assert_eq!(rec["domain"].as_str().unwrap(), row.1);
        // serde_json's default float parser may miss the last bit
        assert!((rec["error"].as_f64().unwrap() - row.2).abs() <= 1e-15 * row.2.abs());
    }
    assert_eq!(doc["fits"][0]["kind"], "algebraic_rate");
}

#[test]
fn smooth_sweep_reports_exponential_slope() {
    let o = jspec(&["converge", "--source", "smooth", "--nr", "9,13,17", "--n-theta", "9", "--n-phi", "8"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().contains("exponential_slope=-"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["converge", "--source", "smooth", "--nr", "13,9"],
        vec!["converge", "--source", "smooth", "--nr", "4,9"],
        vec!["converge", "--source", "file", "--nr", "9"],
        vec!["solve", "--source", "file"],
        vec!["solve", "--source", "file", "--source-file", "/nonexistent/table.txt"],
        vec!["solve", "--source", "nonsense"],
        vec!["quadrature", "--alpha", "-1", "--beta", "0", "--n", "3"],
        vec!["selftest", "--suite", "nonsense"],
        vec![],
    ] {
        assert_eq!(jspec(&args).status.code(), Some(1), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_jspec"))
        .args(["converge", "--source", "zero", "--nr", "9"])
        .env("JSPEC_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(jspec(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_suites() {
    let o = jspec(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 7);

    let o = jspec(&["selftest", "--suite", "quadrature"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS quadrature"));

    let o = jspec(&["selftest", "--perturb-weight", "1e-6", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for suite in doc.as_array().unwrap() {
        let failed = !suite["failures"].as_array().unwrap().is_empty();
        assert_eq!(failed, suite["name"] == "weight-sum", "{}", suite["name"]);
    }
}
