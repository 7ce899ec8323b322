//! End-to-end tests against the compiled binary: artifact shapes, exit
//! codes, determinism, and config-file precedence.

use std::process::{Command, Output};
use std::time::Instant;

use anyhow::{ensure, Context, Result};

fn run(args: &[&str]) -> Result<Output> {
    Command::new(env!("CARGO_BIN_EXE_magsteklov"))
        .args(args)
        .output()
        .context("spawning the binary")
}

fn stdout_of(args: &[&str]) -> Result<String> {
    let out = run(args)?;
    ensure!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(String::from_utf8(out.stdout)?)
}

fn report_of(args: &[&str]) -> Result<serde_json::Value> {
    let text = stdout_of(args)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    ensure!(v["schema_version"] == 1, "unversioned artifact: {v}");
    Ok(v)
}

#[test]
fn disk_sweep_enumerates_all_modes() -> Result<()> {
    let csv = stdout_of(&[
        "spectrum", "--model", "disk2", "--t", "0:0.1:5", "--k-max", "5", "--format", "csv",
    ])?;
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,model,k,p1,p2,sign,value,multiplicity");
    // 51 field strengths, one k = 0 mode plus two modes per k = 1..5.
    assert_eq!(lines.len(), 1 + 51 * 11);
    assert!(lines[1].starts_with("0,disk2,"));
    assert!(lines.last().unwrap().starts_with("5,disk2,"));
    Ok(())
}

#[test]
fn circle_values_at_t2() -> Result<()> {
    let v = report_of(&[
        "spectrum", "--model", "circle", "--t", "2", "--k-max", "3", "--format", "json",
    ])?;
    let mut values: Vec<f64> = v["rows"]
        .as_array()
        .context("rows")?
        .iter()
        .map(|r| r["value"].as_f64().unwrap())
        .collect();
    values.sort_by(f64::total_cmp);
    // (k +- 2)^2 for k <= 3, the k = 0 mode once.
    let expected = [0.0, 1.0, 1.0, 4.0, 9.0, 16.0, 25.0];
    assert_eq!(values.len(), expected.len());
    for (got, want) in values.iter().zip(expected) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
    Ok(())
}

#[test]
fn ball4_lowest_mode_value() -> Result<()> {
    let csv = stdout_of(&["spectrum", "--model", "ball4", "--t", "2", "--k-max", "0"])?;
    let row = csv.lines().nth(1).context("data row")?;
    let value: f64 = row.split(',').nth(6).context("value column")?.parse()?;
    let expected = 2.0 / 1.0f64.tanh() - 2.0;
    assert!((value - expected).abs() < 1e-12, "{value} vs {expected}");
    Ok(())
}

#[test]
fn identical_invocations_are_byte_identical() -> Result<()> {
    let args = [
        "spectrum", "--model", "ball4", "--t", "0.5:0.5:3", "--k-max", "3", "--format", "json",
    ];
    assert_eq!(stdout_of(&args)?, stdout_of(&args)?);
    Ok(())
}

#[test]
fn svg_plots_one_polyline_per_mode() -> Result<()> {
    let svg = stdout_of(&[
        "spectrum", "--model", "disk2", "--t", "0:0.5:2", "--k-max", "2", "--format", "svg",
    ])?;
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 5);
    assert!(svg.contains("disk2 k=1+"));
    Ok(())
}

#[test]
fn usage_errors_exit_2() -> Result<()> {
    assert_eq!(run(&["spectrum", "--bogus"])?.status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--t", "1"])?.status.code(), Some(2));
    let bad_range = run(&["spectrum", "--model", "disk2", "--t", "5:0:1"])?;
    assert_eq!(bad_range.status.code(), Some(2));
    let diagnostic = String::from_utf8(bad_range.stderr)?;
    assert_eq!(diagnostic.lines().count(), 1);
    assert!(diagnostic.starts_with("error: "));
    Ok(())
}

#[test]
fn numeric_failures_exit_3() -> Result<()> {
    // A constant profile has no well-defined flux on the full disk.
    let out = run(&["frustration", "--g", "1", "--r0", "1"])?;
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr)?.starts_with("error: "));
    Ok(())
}

#[test]
fn frustration_quadratic_profile() -> Result<()> {
    let v = report_of(&["frustration", "--g", "r^2", "--r0", "1"])?;
    let value = v["report"]["value"].as_f64().context("value")?;
    assert!((value - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-9);
    assert_eq!(v["report"]["minimizing_integer"], 0);
    Ok(())
}

#[test]
fn frustration_annulus_uses_best_shift() -> Result<()> {
    // On [1/2, 1] the m = -1 shift of r^2 beats m = 0: 5/24 < 7/24.
    let v = report_of(&["frustration", "--g", "r^2", "--r0", "1", "--r-inner", "0.5"])?;
    let value = v["report"]["value"].as_f64().context("value")?;
    assert!((value - 2.0 * std::f64::consts::PI * 5.0 / 24.0).abs() < 1e-9);
    assert_eq!(v["report"]["minimizing_integer"], -1);
    Ok(())
}

#[test]
fn cheeger_single_annulus_family() -> Result<()> {
    let v = report_of(&["cheeger", "--t", "1", "--s", "0"])?;
    let rhs = v["report"]["rhs_estimate"].as_f64().context("rhs")?;
    assert!((rhs - 1.0 / 36.0).abs() < 1e-9);
    assert_eq!(v["report"]["status"], "ConsistentUpperEstimate");
    Ok(())
}

#[test]
fn bounds_upper_is_satisfied() -> Result<()> {
    let v = report_of(&["bounds", "--check", "upper", "--t", "1"])?;
    assert_eq!(v["report"]["satisfied"], true);
    assert_eq!(v["report"]["applicable"], true);
    Ok(())
}

#[test]
fn bounds_asymptotic_default_grid() -> Result<()> {
    let v = report_of(&["bounds", "--check", "asymptotic"])?;
    assert_eq!(v["report"]["satisfied"], true);
    let exponent = v["report"]["fitted_exponent"].as_f64().context("exp")?;
    assert!((0.45..=0.55).contains(&exponent));
    Ok(())
}

#[test]
fn verify_quick_passes_quickly() -> Result<()> {
    let start = Instant::now();
    let v = report_of(&["verify", "--quick"])?;
    assert!(start.elapsed().as_secs() < 60);
    assert_eq!(v["report"]["all_passed"], true);
    assert_eq!(v["report"]["profile"], "quick");
    assert_eq!(v["report"]["checks"].as_array().context("checks")?.len(), 14);
    Ok(())
}

#[test]
fn output_flag_writes_file_and_keeps_stdout_silent() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("table.csv");
    let out = run(&[
        "spectrum", "--model", "circle", "--t", "1", "--k-max", "2",
        "--output", path.to_str().context("utf-8 path")?,
    ])?;
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path)?;
    assert!(written.starts_with("t,model,k,p1,p2,sign,value,multiplicity\n"));
    assert_eq!(written.lines().count(), 6);
    Ok(())
}

#[test]
fn config_file_fills_gaps_and_flags_win() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "model = disk2\nk-max = 2\nformat = json\n")?;
    let cfg = path.to_str().context("utf-8 path")?;

    let v = report_of(&["spectrum", "--t", "1", "--config", cfg])?;
    assert_eq!(v["rows"].as_array().context("rows")?.len(), 5);
    assert_eq!(v["config"]["k_max"], 2);

    let v = report_of(&["spectrum", "--t", "1", "--k-max", "1", "--config", cfg])?;
    assert_eq!(v["rows"].as_array().context("rows")?.len(), 3);
    Ok(())
}
