//! Command implementations. Each one resolves its parameters (flags over
//! config file over defaults), computes through the library crate, and
//! returns the finished artifact plus a pass/fail verdict for the exit code.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;

use magsteklov::bounds::{
    asymptotic_report_with, comparison_report, gauge_periodicity_check, max_principle_check,
    monotonicity_check, reilly_flat_disk, subharmonic_l2_check, unit_interval_grid,
    upper_bound_disk, BoundReport, ASYMPTOTIC_SAFETY_FACTOR,
};
use magsteklov::cheeger::jammes_diagnostic;
use magsteklov::frustration::{
    frustration_punctured, frustration_simply_connected, FrustrationSpec,
};
use magsteklov::radial::Sign;
use magsteklov::spectra::{
    ball4_steklov_spectrum, circle_laplacian_spectrum, disk_steklov_spectrum,
    sphere3_laplacian_spectrum, Model, ModeIndex, SpectrumTable,
};
use magsteklov::verify::{run_verify, VerifyProfile};

use crate::config::{parse_grid, parse_profile, FileConfig, RunConfig};
use crate::emit::{
    report_json, rows_json, spectrum_csv, svg_line_plot, Series, SpectrumRow,
};
use crate::{
    BoundsArgs, CheckKind, CheegerArgs, CliError, FrustrationArgs, ModelArg, OutputFormat,
    SpectrumArgs, VerifyArgs,
};

/// A finished invocation: the artifact text, where it goes, and whether the
/// run counts as passing for the exit code.
pub struct Outcome {
    pub content: String,
    pub output: Option<PathBuf>,
    pub success: bool,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parse a config-file value into a clap value enum, case-insensitively.
fn enum_from_file<T: ValueEnum>(raw: Option<String>, key: &str) -> Result<Option<T>, CliError> {
    raw.map(|s| {
        T::from_str(&s, true).map_err(|e| config_err(format!("config key `{key}`: {e}")))
    })
    .transpose()
}

fn single(grid: &[f64], what: &str) -> Result<f64, CliError> {
    match grid {
        [v] => Ok(*v),
        _ => Err(config_err(format!("{what} takes a single value, not a grid"))),
    }
}

fn spectrum_table(model: Model, t: f64, k_max: u32) -> Result<SpectrumTable, CliError> {
    Ok(match model {
        Model::Disk2 => disk_steklov_spectrum(t, k_max)?,
        Model::Ball4 => ball4_steklov_spectrum(t, k_max)?,
        Model::Circle => circle_laplacian_spectrum(t, k_max),
        Model::Sphere3 => sphere3_laplacian_spectrum(t, k_max)?,
    })
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let model: Model = args
        .model
        .or(enum_from_file::<ModelArg>(file.get_str("model"), "model")?)
        .ok_or_else(|| config_err("spectrum needs --model (or `model` in the config file)"))?
        .into();
    let t_spec = args
        .t
        .clone()
        .or(file.get_str("t"))
        .ok_or_else(|| config_err("spectrum needs --t (or `t` in the config file)"))?;
    let t_grid = parse_grid(&t_spec)?;
    let k_max = args.k_max.or(file.get("k-max")?).unwrap_or(8);
    let format = args
        .format
        .or(enum_from_file(file.get_str("format"), "format")?)
        .unwrap_or(OutputFormat::Csv);
    let output = args
        .output
        .clone()
        .or(file.get_str("output").map(PathBuf::from));

    let mut tables = Vec::with_capacity(t_grid.len());
    for &t in &t_grid {
        tables.push((t, spectrum_table(model, t, k_max)?));
    }

    let config = RunConfig {
        model: Some(model.as_str().into()),
        t: Some(t_grid.clone()),
        k_max: Some(k_max),
        format: Some(format.name().into()),
        output: output.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };

    let content = match format {
        OutputFormat::Csv | OutputFormat::Json => {
            let rows: Vec<SpectrumRow> = tables
                .iter()
                .flat_map(|(t, table)| {
                    table.entries.iter().map(|e| {
                        let (k, p1, p2, sign) = match e.label.index {
                            ModeIndex::Angular { k, sign } => {
                                (Some(k), None, None, Some(sign.as_str()))
                            }
                            ModeIndex::Bidegree { p1, p2 } => {
                                (None, Some(p1), Some(p2), None)
                            }
                        };
                        SpectrumRow {
                            t: *t,
                            model: e.label.model.as_str(),
                            k,
                            p1,
                            p2,
                            sign,
                            value: e.value,
                            multiplicity: e.multiplicity,
                        }
                    })
                })
                .collect();
            match format {
                OutputFormat::Csv => spectrum_csv(&rows),
                _ => rows_json("spectrum", &config, &rows)?,
            }
        }
        OutputFormat::Svg => {
            let mut by_mode = BTreeMap::new();
            for (t, table) in &tables {
                for e in &table.entries {
                    by_mode
                        .entry(e.label)
                        .or_insert_with(Vec::new)
                        .push((*t, e.value));
                }
            }
            let series: Vec<Series> = by_mode
                .into_iter()
                .map(|(label, points)| Series {
                    label: label.to_string(),
                    points,
                })
                .collect();
            svg_line_plot(
                &format!("{model} spectrum"),
                "t",
                "eigenvalue",
                &series,
            )
        }
    };
    Ok(Outcome {
        content,
        output,
        success: true,
    })
}

pub fn cmd_frustration(args: &FrustrationArgs) -> Result<Outcome, CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let g_spec = args
        .g
        .clone()
        .or(file.get_str("g"))
        .ok_or_else(|| config_err("frustration needs --g (or `g` in the config file)"))?;
    let (coeff, power) = parse_profile(&g_spec)?;
    let r_outer = args.r0.or(file.get("r0")?).unwrap_or(1.0);
    let r_inner = args.r_inner.or(file.get("r-inner")?).unwrap_or(0.0);
    let punctured =
        args.punctured || file.get::<bool>("punctured")?.unwrap_or(false) || r_inner > 0.0;
    let output = args
        .output
        .clone()
        .or(file.get_str("output").map(PathBuf::from));

    let g = move |r: f64| coeff * r.powi(power as i32);
    let spec = if r_inner > 0.0 {
        FrustrationSpec::annulus(&g, r_inner, r_outer)
    } else if punctured {
        FrustrationSpec::punctured(&g, r_outer)
    } else {
        FrustrationSpec::simply_connected(&g, r_outer)
    };
    let result = if punctured {
        frustration_punctured(&spec)?
    } else {
        frustration_simply_connected(&spec)?
    };

    let config = RunConfig {
        g: Some(g_spec),
        r_inner: Some(r_inner),
        r_outer: Some(r_outer),
        punctured: Some(punctured),
        output: output.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    Ok(Outcome {
        content: report_json("frustration", &config, &result)?,
        output,
        success: true,
    })
}

pub fn cmd_cheeger(args: &CheegerArgs) -> Result<Outcome, CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let t_spec = args
        .t
        .clone()
        .or(file.get_str("t"))
        .ok_or_else(|| config_err("cheeger needs --t (or `t` in the config file)"))?;
    let t = single(&parse_grid(&t_spec)?, "--t")?;
    let s_spec = args
        .s
        .clone()
        .or(file.get_str("s"))
        .unwrap_or_else(|| "0:0.1:0.9".into());
    let s_grid = parse_grid(&s_spec)?;
    let output = args
        .output
        .clone()
        .or(file.get_str("output").map(PathBuf::from));

    let report = jammes_diagnostic(t, &s_grid)?;
    let config = RunConfig {
        t: Some(vec![t]),
        s_grid: Some(s_grid),
        output: output.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    Ok(Outcome {
        content: report_json("cheeger", &config, &report)?,
        output,
        success: true,
    })
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<Outcome, CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let check: CheckKind = args
        .check
        .or(enum_from_file(file.get_str("check"), "check")?)
        .ok_or_else(|| config_err("bounds needs --check (or `check` in the config file)"))?;
    let t_spec = args.t.clone().or(file.get_str("t"));
    let k = args.k.or(file.get("k")?).unwrap_or(1);
    let sign = match args.sign {
        Some(s) => s,
        None => match file.get_str("sign") {
            Some(raw) => crate::parse_sign(&raw)
                .map_err(|e| config_err(format!("config key `sign`: {e}")))?,
            None => Sign::Plus,
        },
    };
    let k_max = args.k_max.or(file.get("k-max")?).unwrap_or(8);
    let n = args.n.or(file.get("n")?).unwrap_or(20);
    let safety = args
        .safety
        .or(file.get("safety")?)
        .unwrap_or(ASYMPTOTIC_SAFETY_FACTOR);
    let output = args
        .output
        .clone()
        .or(file.get_str("output").map(PathBuf::from));

    let required_grid = |what: &str| -> Result<Vec<f64>, CliError> {
        let spec = t_spec
            .clone()
            .ok_or_else(|| config_err(format!("check `{what}` needs --t")))?;
        parse_grid(&spec)
    };
    let grid_or = |fallback: &str| -> Result<Vec<f64>, CliError> {
        match &t_spec {
            Some(spec) => parse_grid(spec),
            None => parse_grid(fallback),
        }
    };

    let mut config = RunConfig {
        check: Some(check.name().into()),
        output: output.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };

    // BoundReports fail the run only when their hypotheses hold and the
    // inequality still came out false; inapplicable reports are informational.
    let bound_outcome = |report: BoundReport, config: &RunConfig| -> Result<Outcome, CliError> {
        let success = !report.applicable || report.satisfied;
        Ok(Outcome {
            content: report_json("bounds", config, &report)?,
            output: output.clone(),
            success,
        })
    };

    match check {
        CheckKind::Upper => {
            let t = single(&required_grid("upper")?, "--t")?;
            config.t = Some(vec![t]);
            bound_outcome(upper_bound_disk(t)?, &config)
        }
        CheckKind::Reilly => {
            let t = single(&required_grid("reilly")?, "--t")?;
            config.t = Some(vec![t]);
            bound_outcome(reilly_flat_disk(t)?, &config)
        }
        CheckKind::MaxPrinciple => {
            let t = single(&required_grid("max-principle")?, "--t")?;
            config.t = Some(vec![t]);
            config.k = Some(k);
            config.sign = Some(sign.as_str().into());
            let grid = unit_interval_grid(1001);
            bound_outcome(max_principle_check(k, sign, t, &grid)?, &config)
        }
        CheckKind::L2 => {
            let t = single(&required_grid("l2")?, "--t")?;
            config.t = Some(vec![t]);
            config.k = Some(k);
            config.sign = Some(sign.as_str().into());
            bound_outcome(subharmonic_l2_check(k, sign, t)?, &config)
        }
        CheckKind::Gauge => {
            let t = single(&required_grid("gauge")?, "--t")?;
            config.t = Some(vec![t]);
            config.k_max = Some(k_max);
            bound_outcome(gauge_periodicity_check(t, k_max)?, &config)
        }
        CheckKind::Monotonicity => {
            let grid = grid_or("0.5,1,2,4,8,16,32")?;
            config.t = Some(grid.clone());
            bound_outcome(monotonicity_check(&grid)?, &config)
        }
        CheckKind::Asymptotic => {
            let grid = grid_or("100,200,400")?;
            config.t = Some(grid.clone());
            config.safety = Some(safety);
            let report = asymptotic_report_with(&grid, safety)?;
            let success = report.satisfied;
            Ok(Outcome {
                content: report_json("bounds", &config, &report)?,
                output,
                success,
            })
        }
        CheckKind::Comparison => {
            let model: Model = args
                .model
                .or(enum_from_file::<ModelArg>(file.get_str("model"), "model")?)
                .unwrap_or(ModelArg::Disk2)
                .into();
            if !matches!(model, Model::Disk2 | Model::Ball4) {
                return Err(config_err(
                    "comparison runs on the interior models disk2 and ball4",
                ));
            }
            let grid = required_grid("comparison")?;
            config.model = Some(model.as_str().into());
            config.t = Some(grid.clone());
            config.n = Some(n);
            let report = comparison_report(model, &grid, n)?;
            Ok(Outcome {
                content: report_json("bounds", &config, &report)?,
                output,
                success: true,
            })
        }
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let quick = args.quick || file.get::<bool>("quick")?.unwrap_or(false);
    let output = args
        .output
        .clone()
        .or(file.get_str("output").map(PathBuf::from));
    let profile = if quick {
        VerifyProfile::Quick
    } else {
        VerifyProfile::Full
    };
    let report = run_verify(profile);
    let config = RunConfig {
        profile: Some(profile.as_str().into()),
        output: output.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    let success = report.all_passed;
    Ok(Outcome {
        content: report_json("verify", &config, &report)?,
        output,
        success,
    })
}
