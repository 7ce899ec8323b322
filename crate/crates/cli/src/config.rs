//! Resolved run parameters, the optional key-value config file, and the
//! small grammars for field-strength grids and angular profiles.
//!
//! Precedence: command-line flags override config-file entries, which
//! override built-in defaults.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::CliError;

/// Echo of the fully resolved parameters of one invocation, embedded in
/// every JSON artifact so outputs are self-describing.
#[derive(Debug, Default, Serialize)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_inner: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_outer: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub punctured: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub safety: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
}

/// `key = value` pairs loaded from `--config`; `#` starts a comment.
/// Keys use the long flag spelling without the leading dashes.
pub struct FileConfig(HashMap<String, String>);

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut map = HashMap::new();
        let Some(path) = path else {
            return Ok(FileConfig(map));
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    lineno + 1
                )));
            };
            // Keys mirror the long flag names; accept `k_max` for `k-max`.
            map.insert(key.trim().replace('_', "-"), value.trim().to_string());
        }
        Ok(FileConfig(map))
    }

    pub fn get_str(&self, key: &str) -> Option<String> {
        self.0.get(key).cloned()
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| CliError::Config(format!("config key `{key}`: {e}"))),
        }
    }
}

/// Field-strength grid grammar: a single value `2`, an inclusive range
/// `start:step:end` with positive step, or an explicit list `0.5,1,2`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::Config(format!("grid `{spec}`: {msg}"));
    let parse_one = |s: &str| -> Result<f64, CliError> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|e| bad(format!("`{s}`: {e}")))?;
        if !v.is_finite() {
            return Err(bad(format!("`{s}` is not finite")));
        }
        Ok(v)
    };

    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("a range is start:step:end".into()));
        }
        let (start, step, end) = (parse_one(parts[0])?, parse_one(parts[1])?, parse_one(parts[2])?);
        if step <= 0.0 {
            return Err(bad(format!("step {step} must be positive")));
        }
        if end < start {
            return Err(bad(format!("end {end} is below start {start}")));
        }
        let count = ((end - start) / step + 1e-9).floor() as usize + 1;
        let mut values: Vec<f64> = (0..count).map(|i| start + i as f64 * step).collect();
        // Snap a rounding-polluted endpoint back onto the requested end.
        if let Some(last) = values.last_mut() {
            if (*last - end).abs() <= step * 1e-9 {
                *last = end;
            }
        }
        return Ok(values);
    }
    if spec.contains(',') {
        return spec.split(',').map(parse_one).collect();
    }
    Ok(vec![parse_one(spec)?])
}

/// Rotationally symmetric angular profile grammar: `c`, `r^p`, or `c*r^p`
/// (plain `r` is `r^1`). Returns (coefficient, power).
pub fn parse_profile(spec: &str) -> Result<(f64, u32), CliError> {
    let bad = |msg: String| CliError::Config(format!("profile `{spec}`: {msg}"));
    let spec = spec.trim();
    let (coeff_part, monomial) = match spec.split_once('*') {
        Some((c, m)) => (Some(c.trim()), m.trim()),
        None => (None, spec),
    };
    let coeff = match coeff_part {
        Some(c) => c.parse().map_err(|e| bad(format!("coefficient `{c}`: {e}")))?,
        None => 1.0,
    };
    if !monomial.starts_with('r') {
        if coeff_part.is_some() {
            return Err(bad("expected `r` or `r^p` after `*`".into()));
        }
        // Bare constant.
        let c: f64 = monomial
            .parse()
            .map_err(|e| bad(format!("constant `{monomial}`: {e}")))?;
        return Ok((c, 0));
    }
    let power = match &monomial[1..] {
        "" => 1,
        rest => {
            let digits = rest
                .strip_prefix('^')
                .ok_or_else(|| bad("expected `r` or `r^p`".into()))?;
            digits
                .parse()
                .map_err(|e| bad(format!("power `{digits}`: {e}")))?
        }
    };
    Ok((coeff, power))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_enumeration() {
        let g = parse_grid("0:0.1:5").unwrap();
        assert_eq!(g.len(), 51);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 5.0);
    }

    #[test]
    fn list_and_scalar() {
        assert_eq!(parse_grid("2").unwrap(), vec![2.0]);
        assert_eq!(parse_grid("0.5,1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(parse_grid("-1:0.5:0").unwrap(), vec![-1.0, -0.5, 0.0]);
    }

    #[test]
    fn bad_ranges_rejected() {
        assert!(parse_grid("5:0:1").is_err());
        assert!(parse_grid("1:0.5:0").is_err());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("abc").is_err());
        assert!(parse_grid("1:inf:2").is_err());
    }

    #[test]
    fn profile_grammar() {
        assert_eq!(parse_profile("r^2").unwrap(), (1.0, 2));
        assert_eq!(parse_profile("0.5*r^3").unwrap(), (0.5, 3));
        assert_eq!(parse_profile("r").unwrap(), (1.0, 1));
        assert_eq!(parse_profile("2").unwrap(), (2.0, 0));
        assert_eq!(parse_profile("-3*r").unwrap(), (-3.0, 1));
        assert!(parse_profile("r^").is_err());
        assert!(parse_profile("x^2").is_err());
        assert!(parse_profile("2*x").is_err());
    }

    #[test]
    fn config_file_parsing() {
        let dir = std::env::temp_dir().join("magsteklov-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# defaults\nk-max = 4\nformat=json\n").unwrap();
        let cfg = FileConfig::load(Some(&path)).unwrap();
        assert_eq!(cfg.get::<u32>("k-max").unwrap(), Some(4));
        assert_eq!(cfg.get_str("format").as_deref(), Some("json"));
        assert_eq!(cfg.get::<u32>("n").unwrap(), None);
        assert!(cfg.get::<u32>("format").is_err());
    }
}
