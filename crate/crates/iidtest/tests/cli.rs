//! End-to-end tests of the `iidtest` binary: flag handling, file formats,
//! exit codes, and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

use iidtest::models::{draw_innovations, InnovationLaw, SeedSpec};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_iidtest"));
    cmd.env_remove("IIDTEST_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn iidtest")
}

fn write_series(path: &Path, values: &[f64]) {
    let mut text = String::from("x\n");
    for v in values {
        text.push_str(&format!("{v}\n"));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn simulate_writes_reproducible_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let output = run(&[
            "simulate",
            "--model",
            "ar1",
            "--a",
            "0.3",
            "--n",
            "100",
            "--innovations",
            "laplace",
            "--seed",
            "7",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    // Comment, header, 100 rows.
    assert_eq!(text.lines().count(), 102);
    assert!(text.starts_with("# model=ar1 innovations=laplace n=100 seed=7"));
    assert_eq!(text.lines().nth(1), Some("x"));
}

#[test]
fn simulate_records_garch_coefficients_in_comment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("garch.csv");
    let output = run(&[
        "simulate",
        "--model",
        "garch",
        "--a",
        "0.3",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let comment = text.lines().next().unwrap();
    assert!(
        comment.contains("coefficients a0=0.1 b=0.1 c=0.1"),
        "comment was: {comment}"
    );
}

#[test]
fn simulate_rejects_out_of_range_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let output = run(&[
        "simulate",
        "--model",
        "ar1",
        "--a",
        "1.5",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("a must lie in (0, 1)"));
}

#[test]
fn simulate_volatility_column_for_sv_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sv.csv");
    let output = run(&[
        "simulate",
        "--model",
        "sv",
        "--a",
        "0.4",
        "--with-volatility",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().nth(1) == Some("x,v"));

    let output = run(&[
        "simulate",
        "--model",
        "ar1",
        "--a",
        "0.4",
        "--with-volatility",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn seed_environment_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let by_env = dir.path().join("env.csv");
    let by_flag = dir.path().join("flag.csv");
    let output = bin()
        .args([
            "simulate",
            "--model",
            "ma1",
            "--a",
            "0.2",
            "--output",
            by_env.to_str().unwrap(),
        ])
        .env("IIDTEST_SEED", "99")
        .output()
        .unwrap();
    assert!(output.status.success());
    let output = run(&[
        "simulate",
        "--model",
        "ma1",
        "--a",
        "0.2",
        "--seed",
        "99",
        "--output",
        by_flag.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert_eq!(
        std::fs::read(&by_env).unwrap(),
        std::fs::read(&by_flag).unwrap()
    );
}

#[test]
fn test_json_output_has_expected_schema() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("x.csv");
    let x = draw_innovations(&SeedSpec::new(5, 0), InnovationLaw::gaussian(), 240).unwrap();
    write_series(&input, x.values());

    let output = run(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--lags",
        "5",
        "--functions",
        "id-abs",
        "--variant",
        "whitened-l",
        "--alpha",
        "0.05",
        "--json",
    ]);
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(json["N"], 240);
    assert_eq!(json["alpha"], 0.05);
    let result = &json["results"][0];
    // m = 2 functions over 5 lags.
    assert_eq!(result["df"], 20);
    for field in [
        "variant",
        "m",
        "K",
        "N",
        "df",
        "statistic",
        "p_value",
        "rejections",
        "reject",
    ] {
        assert!(result.get(field).is_some(), "missing {field}");
    }
}

#[test]
fn test_matches_reference_ljung_box() {
    // Reference implementation built from scratch: direct lag-correlation
    // sums plus the statrs chi-squared tail.
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("x.csv");
    let x = draw_innovations(&SeedSpec::new(6, 0), InnovationLaw::laplace(), 300).unwrap();
    write_series(&input, x.values());

    let output = run(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--lags",
        "5",
        "--functions",
        "id",
        "--variant",
        "ljung",
        "--json",
    ]);
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();

    let values = x.values();
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    let mut statistic = 0.0;
    for k in 1..=5usize {
        let mut acc = 0.0;
        for i in 0..n - k {
            acc += (values[i] - mean) * (values[i + k] - mean);
        }
        let rho = acc / (n - k) as f64 / var;
        statistic += rho * rho / (n - k) as f64;
    }
    statistic *= (n * (n + 2)) as f64;
    let reference_p = ChiSquared::new(5.0).unwrap().sf(statistic);

    let p = json["results"][0]["p_value"].as_f64().unwrap();
    let stat = json["results"][0]["statistic"].as_f64().unwrap();
    assert!((p - reference_p).abs() <= 1e-10);
    assert!((stat - statistic).abs() <= 1e-10 * statistic.max(1.0));
}

#[test]
fn test_exit_zero_even_when_rejecting() {
    // A strongly autocorrelated input: the decision is "reject" but the run
    // itself succeeded.
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("trend.csv");
    let values: Vec<f64> = (0..120)
        .map(|i| i as f64 + ((i * i) % 7) as f64 * 0.1)
        .collect();
    write_series(&input, &values);
    let output = run(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--functions",
        "id",
        "--variant",
        "ljung",
        "--json",
    ]);
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(json["results"][0]["reject"], true);
}

#[test]
fn constant_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("const.csv");
    write_series(&input, &[2.0; 50]);
    let output = run(&["test", "--input", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("zero variance"));
}

#[test]
fn unreadable_input_and_bad_rows_are_data_errors() {
    let output = run(&["test", "--input", "/nonexistent/file.csv"]);
    assert_eq!(output.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    std::fs::write(&input, "x\n1.0\nnot-a-number\n2.0\n").unwrap();
    let output = run(&["test", "--input", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains(":3:"), "stderr was: {stderr}");
}

#[test]
fn whitening_singularity_is_a_numerical_error() {
    // All-positive input makes |x| coincide with x, so the contemporaneous
    // matrix is singular and the whitened variants cannot run.
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("positive.csv");
    let values: Vec<f64> = (0..80).map(|i| 1.0 + ((i * 13) % 17) as f64).collect();
    write_series(&input, &values);
    let output = run(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--variant",
        "whitened-l",
    ]);
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("whitening failed"));
}

#[test]
fn too_many_lags_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("short.csv");
    write_series(&input, &[0.4, -0.2, 0.9, 1.4, -0.8]);
    let output = run(&["test", "--input", input.to_str().unwrap(), "--lags", "4"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn skewed_input_warns_on_stderr_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("skew.csv");
    // Shifted lognormal sample: heavily right-skewed, both signs present.
    let gauss = draw_innovations(&SeedSpec::new(8, 0), InnovationLaw::gaussian(), 300).unwrap();
    let values: Vec<f64> = gauss.values().iter().map(|v| v.exp() - 1.0).collect();
    write_series(&input, &values);
    let output = run(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--variant",
        "whitened-l",
    ]);
    assert!(output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("skewness"));
}

#[test]
fn experiment_requires_config_or_preset() {
    let output = run(&["experiment"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn experiment_rejects_bad_config_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"replications": 0}"#).unwrap();
    let output = run(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--output-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("replications"));
}

#[test]
fn experiment_paper_tables_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "experiment",
        "--paper-tables",
        "--seed",
        "1",
        "--output-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let csv = std::fs::read_to_string(dir.path().join("experiment.csv")).unwrap();
    // Header plus 4 models x 5 a-values x 2 laws x 3 tests.
    assert_eq!(csv.lines().count(), 121);
    assert!(csv.starts_with("family,a,law,test,alpha,metric,value,stderr,R,N,K,seed\n"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("experiment.json")).unwrap())
            .unwrap();
    assert_eq!(json["cells"].as_array().unwrap().len(), 120);
    // Four tables of 5 x 6 p-value cells on stdout.
    let stdout = String::from_utf8_lossy(&output.stdout);
    for family in ["ar1", "ma1", "sv", "garch"] {
        assert!(stdout.contains(&format!("== {family}")));
    }
}

#[test]
fn experiment_size_study_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("size.json");
    std::fs::write(
        &cfg,
        r#"{
            "families": ["iid"],
            "laws": ["gaussian"],
            "n": 150,
            "k_max": 5,
            "tests": ["ljung-box-raw"],
            "replications": 400,
            "alphas": [0.05],
            "master_seed": 11
        }"#,
    )
    .unwrap();
    let output = run(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--output-dir",
        dir.path().to_str().unwrap(),
        "--prefix",
        "size",
    ]);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("size.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "iid");
    assert_eq!(fields[5], "rejection_rate");
    let rate: f64 = fields[6].parse().unwrap();
    assert!(rate > 0.01 && rate < 0.12, "rate {rate}");
}

#[test]
fn help_exits_zero_unknown_flag_exits_one() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    let output = run(&["test", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(1));
}
