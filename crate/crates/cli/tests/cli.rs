use std::process::{Command, Output};

fn incbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incbeta")).args(args).output().expect("spawn incbeta")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = incbeta(&["eval", "beta", "--nu", "1/2", "--z", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1.0986122886681098\n");

    let o = incbeta(&["eval", "lerch", "--nu", "1", "--z", "0.5"]);
    assert_eq!(stdout(&o), "1.3862943611198906\n");

    let o = incbeta(&["eval", "beta", "--nu", "-1/2", "--z", "0.25"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - (3f64.ln() - 4.0)).abs() <= 1e-15);
}

#[test]
fn eval_complex_argument_prints_both_parts() {
    let o = incbeta(&["eval", "beta", "--nu", "1", "--z", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().ends_with("-3.141592653589793i"));
    let o = incbeta(&["eval", "beta", "--nu", "7/3", "--z", "-0.3,0.4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().ends_with('i'));
}

#[test]
fn domain_errors_exit_two() {
    let o = incbeta(&["eval", "beta", "--nu", "-3", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("DivergentParameter"));
    assert_eq!(stderr(&o).lines().count(), 1);

    let o = incbeta(&["eval", "beta", "--nu", "1/2", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BranchPoint"));

    let o = incbeta(&["eval", "beta", "--nu", "1/0", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = incbeta(&["eval", "beta", "--nu", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn beta_mu_polynomial() {
    let o = incbeta(&["eval", "beta-mu", "--nu", "1", "--m", "1", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    // z - z^2/2
    assert_eq!(stdout(&o), "0.375\n");
}

#[test]
fn integral_examples() {
    let o = incbeta(&["integral", "powlin", "--nu", "1", "--z", "0.5"]);
    assert_eq!(stdout(&o), "1.3862943611198906\n");

    let o = incbeta(&["integral", "tanh", "--lambda", "1/2", "--z", "0.5"]);
    assert_eq!(stdout(&o), "0.5\n");

    let o = incbeta(&["integral", "tanh", "--lambda", "5/4", "--z", "0.8"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    let s = 0.8f64.tanh().sqrt();
    assert!((v - (s.atanh() - 2.0 * s + s.atan())).abs() <= 1e-12);

    let o = incbeta(&["integral", "tanh", "--lambda", "1", "--z", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("OutsideDomain"));
}

#[test]
fn verify_small_grid_passes_and_is_deterministic() {
    let args = ["verify", "--n-max", "1", "--q-max", "4"];
    let a = incbeta(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert!(stderr(&a).contains("failed=0"));
    let b = incbeta(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("nu,z_re,z_im,"));
    assert!(!text.contains('\r'));
}

#[test]
fn verify_branch_point_is_skipped() {
    let o = incbeta(&["verify", "--nu", "1/2", "--z", "1.0", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("1/2,1,")).unwrap();
    assert!(row.contains("Skipped") && row.contains("BranchPoint"));
}

#[test]
fn verify_zero_tolerance_fails() {
    let o = incbeta(&["verify", "--nu", "7/3", "--nu", "-5/2", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let o = incbeta(&["verify", "--nu", "1/3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 1 + 29);
}

#[test]
fn figure_rows_sit_on_minus_pi() {
    let o = incbeta(&["figure", "--nu", "123/10", "--z-start", "1.1", "--z-end", "10", "--points", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("z,im_reduction,im_series_analytic"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] + std::f64::consts::PI).abs() <= 1e-12);
        assert_eq!(cols[2], -std::f64::consts::PI);
    }

    let o = incbeta(&["figure", "--nu", "1/2", "--z-start", "1.1", "--z-end", "2", "--points", "2"]);
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = incbeta(&["figure", "--z-start", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_presets() {
    let o = incbeta(&["bench", "--reps", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = incbeta(&["bench", "--preset", "small-z", "--reps", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("method,nu,z_re,z_im,reps,median_ns,mean_ns,checksum"));
    assert_eq!(text.lines().count(), 4);

    let o = incbeta(&["bench", "--preset", "near-one", "--reps", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let median = |method: &str| -> f64 {
        let row = stdout(&o).lines().find(|l| l.starts_with(method)).unwrap().to_string();
        row.split(',').nth(5).unwrap().parse().unwrap()
    };
    assert!(median("Reduction,") < median("Series,"));

    let o = incbeta(&["bench", "--preset", "far-away"]);
    assert_eq!(o.status.code(), Some(2));
}
