use std::process::{Command, Output};

fn halfline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<String>> {
    csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn below_threshold_message() {
    let o = halfline(&["bound", "--bc", "dirichlet", "--lambda", "2", "--x0", "0.5"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no bound state (threshold: x0 = 0.5)"));
}

#[test]
fn neumann_origin_energy() {
    let o = halfline(&["bound", "--bc", "neumann", "--lambda", "1", "--x0", "0"]);
    assert!(o.status.success());
    assert_eq!(rows(&o)[0][2], "-1.0");
}

#[test]
fn three_dirichlet_resonances() {
    let o = halfline(&["resonances", "--bc", "dirichlet", "--lambda", "2", "--x0", "1", "--n-max", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("branch,z1,z2,re_k,im_k,e_r,gamma,residual\n"));
    let r = rows(&o);
    assert_eq!(r.len(), 3);
    let z1: f64 = r[0][1].parse().unwrap();
    let z2: f64 = r[0][2].parse().unwrap();
    assert!((z1 - 7.42).abs() < 5e-3 && (z2 - 1.40).abs() < 1e-2);
}

#[test]
fn sweep_with_asymptote() {
    let o = halfline(&[
        "sweep", "--bc", "neumann", "--over", "lambda", "--x0", "inf", "--start", "1", "--stop", "2", "--count", "3",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "param,energy,exists,asymptotic\n1.0,-0.25,true,true\n1.5,-0.5625,true,true\n2.0,-1.0,true,true\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bound", "--bc", "sideways", "--lambda", "1", "--x0", "1"][..],
        &["bound", "--bc", "dirichlet", "--lambda", "0", "--x0", "1"],
        &["resonances", "--bc", "dirichlet", "--lambda", "1", "--x0", "inf"],
        &["sweep", "--bc", "dirichlet", "--over", "x0", "--lambda", "1", "--start", "0", "--stop", "1", "--count", "1"],
        &["figure", "7"],
    ] {
        assert_eq!(halfline(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn deterministic_output_and_file_target() {
    let args = ["--format", "json", "figure", "5", "--alphas", "1,2", "--n-max", "2"];
    let a = halfline(&args);
    let b = halfline(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poles.json");
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend_from_slice(&args);
    let c = halfline(&with_out);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);

    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["metadata"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][0]["branch"], 0);
}

#[test]
fn surface_schema() {
    let o = halfline(&["figure", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("lambda,x0,energy\n"));
    assert_eq!(rows(&o).len(), 3600);
}

#[test]
fn kernels_and_shell() {
    let g = halfline(&["green", "--bc", "neumann", "--x", "1", "--y", "1", "--energy", "-0.25"]);
    let v: f64 = rows(&g)[0][3].parse().unwrap();
    assert!((v - 1.3678794411714423).abs() < 1e-15);

    let h = halfline(&["heat", "--bc", "dirichlet", "--x", "1", "--y", "1", "--t", "0.5"]);
    let v: f64 = rows(&h)[0][3].parse().unwrap();
    assert!((v - 0.3449513138882446).abs() < 1e-15);

    let s = halfline(&["shell3d", "--ext", "inf0", "--lambda", "1", "--r0", "2", "--r", "1"]);
    let r = rows(&s);
    let e: f64 = r[0][2].parse().unwrap();
    assert!((e + 0.15872739263676033).abs() < 1e-14);
    assert!(r[0][5].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn verify_passes() {
    let o = halfline(&["verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!String::from_utf8_lossy(&o.stderr).contains("FAIL"));
}
