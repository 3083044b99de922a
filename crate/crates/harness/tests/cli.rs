use std::path::Path;
use std::process::{Command, Output};

fn apem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apem")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn run_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "shock.cfg", "case = shock\nlambda = 0.1\nn_cells = 80\nsnapshot_times = 2e-4\n");
    let out = dir.path().join("out");
    let o = apem(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["shock_000.csv", "shock_001.csv", "shock_summary.json"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let head = std::fs::read_to_string(out.join("shock_001.csv")).unwrap();
    assert_eq!(head.lines().next().unwrap(), "x,n,qx,qy,Ex,Ey,Bz");
    assert_eq!(head.lines().count(), 81);
}

#[test]
fn config_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.cfg", "case = shock\nwidth = 3\n");
    let o = apem(&["run", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("width"));

    let o = apem(&["run", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let costly = write_config(dir.path(), "costly.cfg", "case = shock\nscheme = classical\nlambda = 1e-8\n");
    let o = apem(&["run", "--config", &costly]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("steps"));

    assert_eq!(apem(&["stability", "--scheme", "1,2,1", "--lambda-list", "1", "--dt-over-h", "0.1"]).status.code(), Some(2));
    assert_eq!(apem(&["dispersion", "--lambda", "-1", "--t", "1", "--xi-max", "1"]).status.code(), Some(2));
    assert_eq!(apem(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn blow_up_exits_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "unstable.cfg",
        "case = shock\nscheme = classical\nlambda = 1e-3\nn_cells = 50\ndt = 1e-2\nt_end = 2\n",
    );
    let o = apem(&["run", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn scaling_prints_units() {
    let o = apem(&["scaling", "--n0", "1e16", "--T0", "5", "--x0", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lambda = v["lambda"].as_f64().unwrap();
    assert!((lambda - 1.66e-3).abs() < 0.01e-3, "{lambda}");
    let o = apem(&["scaling", "--n0", "1e18", "--T0", "5", "--x0", "0.1", "--mass", "12u"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn stability_and_dispersion_tables() {
    let o = apem(&["stability", "--scheme", "1,1,1", "--lambda-list", "1,1e-4", "--dt-over-h", "0.1", "--n-xi", "65"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,c,lambda,dt_over_h,max_growth,stable");
    assert_eq!(lines.len(), 3);
    assert!(lines[1..].iter().all(|l| l.ends_with("true")), "{text}");

    let o = apem(&["dispersion", "--lambda", "0.5", "--t", "1", "--xi-max", "1", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last: Vec<f64> = text.lines().nth(2).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert!((last[1] - 2.0 * 2f64.sqrt()).abs() < 1e-12 && (last[2] - 5f64.sqrt()).abs() < 1e-12, "{text}");
}

#[test]
fn converge_reports_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let o = apem(&[
        "converge", "--case", "smooth", "--lambda", "1", "--resolutions", "25,50", "--reference", "200", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("n_cells,h,n,qx"), "{text}");
    assert!(text.contains("slope n = ") && text.contains("slope qx = "));
    assert!(dir.path().join("smooth_convergence.json").exists());
    let o = apem(&["converge", "--case", "smooth", "--lambda", "1", "--resolutions", "30,50", "--reference", "200"]);
    assert_eq!(o.status.code(), Some(2));
}
