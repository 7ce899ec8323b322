//! Output assembly: CSV tables, versioned JSON envelopes, and a minimal
//! self-contained SVG line plot.
//!
//! Everything is built in memory and written in one shot, so a failing run
//! never leaves a partial artifact behind. Floats go through `Display`,
//! which is the shortest round-trip decimal, keeping identical runs
//! byte-identical.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::RunConfig;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "t,model,k,p1,p2,sign,value,multiplicity";

/// One spectrum line; unused index columns stay empty in CSV and are
/// omitted from JSON.
#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub t: f64,
    pub model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<&'static str>,
    pub value: f64,
    pub multiplicity: u32,
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.t,
            r.model,
            opt(r.k),
            opt(r.p1),
            opt(r.p2),
            r.sign.unwrap_or(""),
            r.value,
            r.multiplicity
        );
    }
    out
}

#[derive(Serialize)]
struct RowsEnvelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a RunConfig,
    rows: &'a [T],
}

#[derive(Serialize)]
struct ReportEnvelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a RunConfig,
    report: &'a T,
}

pub fn rows_json<T: Serialize>(
    command: &str,
    config: &RunConfig,
    rows: &[T],
) -> Result<String, CliError> {
    let envelope = RowsEnvelope {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        rows,
    };
    Ok(serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Config(e.to_string()))? + "\n")
}

pub fn report_json<T: Serialize>(
    command: &str,
    config: &RunConfig,
    report: &T,
) -> Result<String, CliError> {
    let envelope = ReportEnvelope {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        report,
    };
    Ok(serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Config(e.to_string()))? + "\n")
}

// ---------------------------------------------------------------------------
// SVG line plot
// ---------------------------------------------------------------------------

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 770.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 470.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick_label(v: f64) -> String {
    if v.abs() < 1e-12 {
        return "0".into();
    }
    let s = format!("{v:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn data_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        let pad = lo.abs().max(1.0) * 0.05;
        (lo - pad, hi + pad)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    }
}

/// Static line plot: axes with five ticks per side, one polyline per
/// series, and a legend of series labels.
pub fn svg_line_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (x_lo, x_hi) = data_range(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y_lo, y_hi) = data_range(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (RIGHT - LEFT);
    let py = |y: f64| BOTTOM - (y - y_lo) / (y_hi - y_lo) * (BOTTOM - TOP);

    let mut svg = String::with_capacity(1 << 14);
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{:.0}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        0.5 * WIDTH,
        escape(title)
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{BOTTOM}\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{LEFT}\" y1=\"{BOTTOM}\" x2=\"{RIGHT}\" y2=\"{BOTTOM}\" stroke=\"black\"/>"
    );
    for i in 0..=4u32 {
        let f = i as f64 / 4.0;
        let xv = x_lo + f * (x_hi - x_lo);
        let x = px(xv);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{BOTTOM}\" x2=\"{x:.2}\" y2=\"475\" stroke=\"black\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.2}\" y=\"490\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            tick_label(xv)
        );
        let yv = y_lo + f * (y_hi - y_lo);
        let y = py(yv);
        let _ = writeln!(
            svg,
            "<line x1=\"65\" y1=\"{y:.2}\" x2=\"{LEFT}\" y2=\"{y:.2}\" stroke=\"black\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"60\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            y + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.0}\" y=\"510\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>",
        0.5 * (LEFT + RIGHT),
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        "<text x=\"18\" y=\"{:.0}\" transform=\"rotate(-90 18 {:.0})\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>",
        0.5 * (TOP + BOTTOM),
        0.5 * (TOP + BOTTOM),
        escape(y_label)
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for (x, y) in &s.points {
            let _ = write!(points, "{:.2},{:.2} ", px(*x), py(*y));
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.trim_end()
        );
    }
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = 54.0 + 15.0 * i as f64;
        let _ = writeln!(
            svg,
            "<line x1=\"86\" y1=\"{:.0}\" x2=\"106\" y2=\"{:.0}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            y - 4.0,
            y - 4.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"112\" y=\"{y:.0}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_leaves_unused_columns_empty() {
        let rows = [
            SpectrumRow {
                t: 0.5,
                model: "disk2",
                k: Some(1),
                p1: None,
                p2: None,
                sign: Some("+"),
                value: 1.25,
                multiplicity: 1,
            },
            SpectrumRow {
                t: 0.5,
                model: "ball4",
                k: None,
                p1: Some(0),
                p2: Some(2),
                sign: None,
                value: 2.0,
                multiplicity: 3,
            },
        ];
        let csv = spectrum_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "0.5,disk2,1,,,+,1.25,1");
        assert_eq!(lines[2], "0.5,ball4,,0,2,,2,3");
    }

    #[test]
    fn float_display_is_shortest_round_trip() {
        assert_eq!(format!("{}", 0.1f64 + 0.2f64), "0.30000000000000004");
        assert_eq!(format!("{}", 2.0f64), "2");
    }

    #[test]
    fn svg_contains_one_polyline_per_series() {
        let series = vec![
            Series {
                label: "a".into(),
                points: vec![(0.0, 0.0), (1.0, 1.0)],
            },
            Series {
                label: "b".into(),
                points: vec![(0.0, 1.0), (1.0, 0.0)],
            },
        ];
        let svg = svg_line_plot("title", "t", "value", &series);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">a</text>"));
    }

    #[test]
    fn degenerate_ranges_stay_finite() {
        let series = vec![Series {
            label: "flat".into(),
            points: vec![(1.0, 3.0)],
        }];
        let svg = svg_line_plot("t", "x", "y", &series);
        assert!(!svg.contains("NaN"));
        assert!(!svg.contains("inf"));
    }

    #[test]
    fn tick_labels_trim_zeros() {
        assert_eq!(tick_label(5.0), "5");
        assert_eq!(tick_label(0.125), "0.125");
        assert_eq!(tick_label(-0.0), "0");
    }
}
