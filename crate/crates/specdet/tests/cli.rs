//! End-to-end tests of the `specdet` binary: exit codes, report text,
//! and byte-level CSV determinism.

use std::io::Write;
use std::process::{Command, Output};

fn write_config(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

fn specdet(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_specdet"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str], config: &str) -> Output {
    let file = write_config(config);
    specdet(args)
        .arg("--config")
        .arg(file.path())
        .output()
        .unwrap()
}

const DWE_T1: &str = r#"{
    "spectrum": [{"kind": "power_rays", "c1": 3.141592653589793, "c2": 1.0,
                  "angles": [1.5707963267948966, 4.71238898038469]}],
    "cut": -3.141592653589793
}"#;

#[test]
fn det_reports_dwe_value() {
    let output = run(&["det"], DWE_T1);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("classification: DeterminantDefined"));
    assert!(stdout.contains("det = 2.000000000 + 0.000000000i"), "{stdout}");
    assert!(stdout.contains("error_estimate = "));
}

#[test]
fn det_with_oracle_flag_reports_small_delta() {
    let output = run(&["det", "--oracle"], DWE_T1);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    let delta_line = stdout
        .lines()
        .find(|l| l.starts_with("oracle_delta = "))
        .expect("oracle_delta line");
    let delta: f64 = delta_line["oracle_delta = ".len()..].parse().unwrap();
    assert!(delta < 1e-6, "{delta_line}");
}

#[test]
fn compare_shifted_line_across_the_line() {
    let config = r#"{
        "spectrum": [{"kind": "shifted_line", "b": 1.0}],
        "cut": 0.0,
        "cut2": 3.141592653589793
    }"#;
    let output = run(&["compare"], config);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    // -exp(2 pi) to nine decimals.
    assert!(stdout.contains("ratio = -535.491655525 + 0.000000000i"), "{stdout}");
}

#[test]
fn cli_beta_flags_override_config() {
    let config = r#"{
        "spectrum": [{"kind": "shifted_line", "b": 1.0}],
        "cut": 2.0,
        "cut2": 2.5
    }"#;
    let file = write_config(config);
    let output = specdet(&["compare", "--beta", "0.0", "--beta2", "3.141592653589793"])
        .arg("--config")
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("ratio = -535.491655525 + 0.000000000i"), "{stdout}");
}

#[test]
fn classify_exit_codes() {
    let log = r#"{"spectrum": [{"kind": "log_ray", "c1": 1.0, "c2": 2.0, "alpha": 0.5}]}"#;
    let output = run(&["classify"], log);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stdout).contains("ZetaUndefined"));

    let exp = r#"{"spectrum": [{"kind": "exp_ray", "c1": 1.0, "c2": 0.5, "alpha": 0.5}]}"#;
    let output = run(&["classify"], exp);
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stdout).contains("DeterminantDivergent"));

    let output = run(&["classify"], DWE_T1);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stdout).contains("DeterminantDefined"));
}

#[test]
fn bad_config_fails_with_error_prefix() {
    let output = run(&["det"], "{ not json");
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.starts_with("ERROR: "), "{stderr}");

    let on_ray = r#"{
        "spectrum": [{"kind": "power_rays", "c1": 1.0, "c2": 1.0, "angles": [1.0]}],
        "cut": 1.0
    }"#;
    let output = run(&["det"], on_ray);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("cut lies on eigenvalue ray"), "{stderr}");
}

#[test]
fn sweep_csv_is_deterministic_and_crlf() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "spectrum": [{"kind": "power_rays", "c1": 3.141592653589793, "c2": 1.0,
                      "angles": [1.5707963267948966, 4.71238898038469]}],
        "sweep": {"from": 0.2, "to": 2.0, "steps": 9}
    }"#;
    let file = write_config(config);
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let status = specdet(&["sweep"])
            .arg("--config")
            .arg(file.path())
            .arg("--out")
            .arg(&path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "sweep output differs between runs");

    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert!(text.starts_with("beta,det_re,det_im,det_abs,crossings\r\n"));
    assert!(text.lines().all(|l| l.is_empty() || !l.ends_with('\r')));
    assert_eq!(text.matches("\r\n").count(), 10);
}

#[test]
fn sweep_magnitude_continuous_and_sign_flips_at_ray() {
    let config = r#"{
        "spectrum": [{"kind": "power_rays", "c1": 3.141592653589793, "c2": 1.0,
                      "angles": [1.5707963267948966, 4.71238898038469]}],
        "sweep": {"from": 0.2, "to": 2.0, "steps": 9}
    }"#;
    let output = run(&["sweep"], config);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    let rows: Vec<Vec<String>> = stdout
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    assert_eq!(rows.len(), 9);

    let abs: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    for w in abs.windows(2) {
        assert!((w[0] - w[1]).abs() <= 1e-9 * w[0].abs(), "|det| jumped: {w:?}");
    }

    let re: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    let crossings: Vec<u32> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    // Ray at pi/2 sits between grid points; the real part flips sign there
    // and the crossing count increments in the same step.
    for i in 1..rows.len() {
        if crossings[i] == crossings[i - 1] {
            assert!(re[i] * re[i - 1] > 0.0, "sign flip without crossing at row {i}");
        } else {
            assert!(re[i] * re[i - 1] < 0.0, "crossing without sign flip at row {i}");
        }
    }
    assert_eq!(crossings.first(), Some(&0));
    assert_eq!(crossings.last(), Some(&1));
}

#[test]
fn zeta_csv_on_stdout() {
    let config = r#"{
        "spectrum": [{"kind": "power_rays", "c1": 1.0, "c2": 1.0, "angles": [0.7853981633974483]}],
        "cut": -3.141592653589793,
        "points": [[2.0, 0.0], [3.0, 1.0]]
    }"#;
    let output = run(&["zeta", "--oracle"], config);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.starts_with("s_re,s_im,zeta_re,zeta_im\r\n"), "{stdout}");
    assert!(stdout.contains("oracle_points_compared = 2"), "{stdout}");
    let delta_line = stdout
        .lines()
        .find(|l| l.starts_with("oracle_max_delta = "))
        .unwrap();
    let delta: f64 = delta_line["oracle_max_delta = ".len()..].parse().unwrap();
    assert!(delta < 1e-7, "{delta_line}");
}

#[test]
fn witness_csv_for_divergent_families() {
    let log = r#"{"spectrum": [{"kind": "log_ray", "c1": 1.0, "c2": 2.0, "alpha": 0.0}]}"#;
    let output = run(&["witness"], log);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.starts_with("checkpoint,partial_sum\r\n"), "{stdout}");

    let exp = r#"{"spectrum": [{"kind": "exp_ray", "c1": 1.0, "c2": 1.0, "alpha": 0.0}]}"#;
    let output = run(&["witness"], exp);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.starts_with("s,zeta_prime_abs\r\n"), "{stdout}");
}

#[test]
fn em_params_env_var() {
    let file = write_config(DWE_T1);
    let output = specdet(&["det"])
        .arg("--config")
        .arg(file.path())
        .env("SPECDET_EM_PARAMS", "40,10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("det = 2.000000000 + 0.000000000i"), "{stdout}");

    let output = specdet(&["det"])
        .arg("--config")
        .arg(file.path())
        .env("SPECDET_EM_PARAMS", "nonsense")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("ERROR: "));
}

#[test]
fn unknown_command_is_an_error() {
    let output = run(&["frobnicate"], DWE_T1);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("unknown command"), "{stderr}");
}
