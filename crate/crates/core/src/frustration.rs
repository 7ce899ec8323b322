//! Frustration constants of rotationally symmetric potentials.
//!
//! A potential `g(r) dtheta` on a disk, punctured disk, or annulus has
//! frustration
//!
//! * simply connected: `2 pi int |g(r)| dr` (every admissible gauge form is
//!   exact, so nothing can be subtracted),
//! * punctured or annular: `2 pi min over integers m of int |g(r) + m| dr`
//!   (the gauge class contributes exactly the integer multiples of dtheta).
//!
//! Any exact `f(r) dr` part of the potential is gauged away and never enters
//! the value. The quadrature splits the interval at the sign changes of
//! `g + m` so each panel is smooth.

use serde::Serialize;

use crate::error::{Result, SpectralError};
use crate::quad;

const QUAD_ABS_TOL: f64 = 1e-12;
const QUAD_REL_TOL: f64 = 1e-12;
/// Resolution of the sign scan locating integrand kinks.
const SIGN_SCAN_INTERVALS: usize = 1024;
/// Two integer shifts are considered tied below this relative margin; ties
/// resolve to the smaller |m|.
const IMPROVEMENT_MARGIN: f64 = 1e-12;

/// Rotationally symmetric potential `g(r) dtheta` on `[r_inner, r_outer]`,
/// plus a recorded (value-irrelevant) exact radial part `r^radial_power dr`.
pub struct FrustrationSpec<'a> {
    pub radial_power: u32,
    pub angular_profile: &'a dyn Fn(f64) -> f64,
    pub r_inner: f64,
    pub r_outer: f64,
    /// True when the origin is removed or `r_inner > 0`; enables the integer
    /// gauge scan.
    pub punctured: bool,
}

impl<'a> FrustrationSpec<'a> {
    pub fn simply_connected(g: &'a dyn Fn(f64) -> f64, r_outer: f64) -> Self {
        FrustrationSpec {
            radial_power: 0,
            angular_profile: g,
            r_inner: 0.0,
            r_outer,
            punctured: false,
        }
    }

    pub fn punctured(g: &'a dyn Fn(f64) -> f64, r_outer: f64) -> Self {
        FrustrationSpec {
            radial_power: 0,
            angular_profile: g,
            r_inner: 0.0,
            r_outer,
            punctured: true,
        }
    }

    pub fn annulus(g: &'a dyn Fn(f64) -> f64, r_inner: f64, r_outer: f64) -> Self {
        FrustrationSpec {
            radial_power: 0,
            angular_profile: g,
            r_inner,
            r_outer,
            punctured: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_inner >= 0.0 && self.r_outer > self.r_inner && self.r_outer.is_finite()) {
            return Err(SpectralError::InvalidParams(format!(
                "bad radial interval [{}, {}]",
                self.r_inner, self.r_outer
            )));
        }
        if self.r_inner > 0.0 && !self.punctured {
            return Err(SpectralError::InvalidParams(
                "an annulus is multiply connected; set the punctured flag".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrustrationResult {
    pub value: f64,
    /// Optimal integer gauge shift; 0 on the simply connected path.
    pub minimizing_integer: i64,
    pub quadrature_error_estimate: f64,
}

/// `int_a^b |f|` split at the sign changes of `f`, which are located by a
/// uniform scan plus bisection. Returns (value, error estimate).
fn integrate_abs(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<(f64, f64)> {
    let mut cuts = vec![a];
    let step = (b - a) / SIGN_SCAN_INTERVALS as f64;
    let mut prev_x = a;
    let mut prev_v = f(a);
    for i in 1..=SIGN_SCAN_INTERVALS {
        let x = if i == SIGN_SCAN_INTERVALS {
            b
        } else {
            a + step * i as f64
        };
        let v = f(x);
        if prev_v == 0.0 || (prev_v < 0.0) != (v < 0.0) {
            // Bisect [prev_x, x] down to the kink.
            let (mut lo, mut hi) = (prev_x, x);
            let mut flo = prev_v;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fmid = f(mid);
                if fmid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (flo < 0.0) == (fmid < 0.0) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            if root > *cuts.last().unwrap() && root < b {
                cuts.push(root);
            }
        }
        prev_x = x;
        prev_v = v;
    }
    cuts.push(b);

    let mut total = 0.0;
    let mut err = 0.0;
    for pair in cuts.windows(2) {
        if pair[1] <= pair[0] {
            continue;
        }
        let res = quad::integrate(|r| f(r).abs(), pair[0], pair[1], QUAD_ABS_TOL, QUAD_REL_TOL)?;
        total += res.value;
        err += res.abs_error;
    }
    Ok((total, err))
}

/// Frustration of `g(r) dtheta` on the full disk of radius `r_outer`.
pub fn frustration_simply_connected(spec: &FrustrationSpec) -> Result<FrustrationResult> {
    spec.validate()?;
    if spec.punctured || spec.r_inner > 0.0 {
        return Err(SpectralError::InvalidParams(
            "simply connected path needs the full disk".into(),
        ));
    }
    let g = spec.angular_profile;
    let at_origin = g(0.0);
    if at_origin.abs() > 1e-12 {
        return Err(SpectralError::IllDefinedAtOrigin { value: at_origin });
    }
    let (value, err) = integrate_abs(&g, 0.0, spec.r_outer)?;
    Ok(FrustrationResult {
        value: 2.0 * std::f64::consts::PI * value,
        minimizing_integer: 0,
        quadrature_error_estimate: 2.0 * std::f64::consts::PI * err,
    })
}

/// Frustration on the punctured disk or annulus: minimizes
/// `int |g + m|` over integers m. The objective is convex in m, so the scan
/// window `[-ceil(max g) - 1, -floor(min g) + 1]` brackets the optimum;
/// candidates are visited by increasing |m| and replaced only on strict
/// improvement, so exact ties resolve to the smaller shift.
pub fn frustration_punctured(spec: &FrustrationSpec) -> Result<FrustrationResult> {
    spec.validate()?;
    if !spec.punctured {
        return Err(SpectralError::InvalidParams(
            "integer gauge scan needs a punctured or annular domain".into(),
        ));
    }
    let g = spec.angular_profile;
    let (a, b) = (spec.r_inner, spec.r_outer);

    let mut g_min = f64::INFINITY;
    let mut g_max = f64::NEG_INFINITY;
    for i in 0..=SIGN_SCAN_INTERVALS {
        let r = a + (b - a) * i as f64 / SIGN_SCAN_INTERVALS as f64;
        let v = g(r);
        g_min = g_min.min(v);
        g_max = g_max.max(v);
    }
    if !(g_min.is_finite() && g_max.is_finite()) {
        return Err(SpectralError::InvalidParams(
            "angular profile is not finite on the interval".into(),
        ));
    }
    let lo = -(g_max.ceil() as i64) - 1;
    let hi = -(g_min.floor() as i64) + 1;

    let mut candidates: Vec<i64> = (lo..=hi).collect();
    candidates.sort_by_key(|&m| (m.abs(), m));

    let mut best: Option<(f64, f64, i64)> = None;
    for m in candidates {
        let shifted = |r: f64| g(r) + m as f64;
        let (value, err) = integrate_abs(&shifted, a, b)?;
        let improves = match best {
            None => true,
            Some((prev, _, _)) => value < prev - IMPROVEMENT_MARGIN * (1.0 + value),
        };
        if improves {
            best = Some((value, err, m));
        }
    }
    let (value, err, m) = best.expect("at least one integer candidate");
    Ok(FrustrationResult {
        value: 2.0 * std::f64::consts::PI * value,
        minimizing_integer: m,
        quadrature_error_estimate: 2.0 * std::f64::consts::PI * err,
    })
}
