//! Radial profiles of magnetic harmonic functions on balls.
//!
//! Separating the magnetic Laplace equation on the unit 2-ball or 4-ball
//! with a rotational potential leaves one singular ODE per angular mode,
//!
//! ```text
//!     Q'' + (c/r) Q' - (a + b r^2) Q = 0,        Q regular at r = 0,
//! ```
//!
//! whose regular solution is an even power series `Q(r) = sum_j c_j r^{2j}`.
//! The coefficients obey the two-term recursion
//!
//! ```text
//!     4 j (j + (c-1)/2) c_j = a c_{j-1} + b c_{j-2},     c_0 = 1,
//! ```
//!
//! which converges factorially, so truncation is driven by a relative tail
//! test. The full mode is `Q(r) r^k` times a boundary eigenfunction and its
//! Steklov eigenvalue is `Q'(1) + k` once `Q(1) = 1`.
//!
//! Large fields push the coefficients past the floating point range
//! (`max |c_j|` grows like `e^t`); the solver renormalizes the stored
//! coefficients whenever they exceed [`RESCALE_THRESHOLD`] and tracks the
//! factored-out magnitude in `scale_log`. A logarithmic-derivative path
//! integrates `u = Q'/Q` directly and is preferred when `b` is large; it
//! degenerates when `Q` has an interior zero, which surfaces as
//! [`SpectralError::RiccatiPole`] with the series path as fallback.

use serde::Serialize;

use crate::error::{Result, SpectralError};
use crate::ivp::{self, IvpError, Rk45Options};
use crate::numeric::compensated_sum;

/// Stored coefficients are renormalized once they pass this magnitude.
pub const RESCALE_THRESHOLD: f64 = 1e150;
/// Relative tail size below which the series is considered converged.
pub const TAIL_TOL: f64 = 1e-16;
/// Hard cap on the series order.
pub const MAX_ORDER: usize = 10_000;
/// Above this quadratic coefficient the log-derivative path is the default.
pub const RICCATI_CUTOFF: f64 = 1e4;
/// Minimum boundary-sum to coefficient-magnitude ratio for a trustworthy
/// normalization. Cancellation thinner than this leaves the summed value
/// with fewer than ~9 significant digits once the recursion's own rounding
/// is amplified (measured against extended-precision runs of the same
/// recursion), so such modes are handed to the log-derivative path instead.
pub const CANCELLATION_GUARD: f64 = 1e-7;

const SEED_RADIUS: f64 = 1e-3;
const LOG_DERIVATIVE_LIMIT: f64 = 1e8;

/// Orientation of an angular mode `e^{+ik\theta}` or `e^{-ik\theta}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Coefficients of `Q'' + (c/r) Q' - (a + b r^2) Q = 0` plus the power of r
/// multiplying `Q` in the full mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOdeParams {
    /// Friction coefficient c; `(c-1)/2` is a nonnegative integer for the
    /// ball models (k on the 2-ball, k+1 on the 4-ball).
    pub friction: f64,
    /// Constant part a of the potential.
    pub linear: f64,
    /// Quadratic part b of the potential, `t^2` for field strength t.
    pub quadratic: f64,
    /// Power k of the radial factor `r^k`.
    pub k_power: u32,
}

impl RadialOdeParams {
    pub fn new(friction: f64, linear: f64, quadratic: f64, k_power: u32) -> Result<Self> {
        let params = RadialOdeParams {
            friction,
            linear,
            quadratic,
            k_power,
        };
        params.validate()?;
        Ok(params)
    }

    /// Mode `Q(r) r^k e^{±ik\theta}` on the unit disk with potential
    /// `t(-y dx + x dy)`: c = 2k+1, a = ±2kt, b = t².
    pub fn disk_mode(k: u32, sign: Sign, t: f64) -> Result<Self> {
        let kf = k as f64;
        RadialOdeParams::new(2.0 * kf + 1.0, sign.factor() * 2.0 * kf * t, t * t, k)
    }

    /// Mode `Q(r) f_{p1,p2}` on the unit 4-ball, where `f_{p1,p2}` is the
    /// degree-(p1+p2) harmonic built from the rotation-invariant complex
    /// coordinates: c = 2k+3, a = 2t(p1-p2), b = t², with k = p1+p2.
    pub fn ball4_mode(p1: u32, p2: u32, t: f64) -> Result<Self> {
        let k = p1 + p2;
        RadialOdeParams::new(
            2.0 * k as f64 + 3.0,
            2.0 * t * (p1 as f64 - p2 as f64),
            t * t,
            k,
        )
    }

    fn validate(&self) -> Result<()> {
        if !(self.friction.is_finite() && self.friction > 0.0) {
            return Err(SpectralError::InvalidParams(format!(
                "friction coefficient must be positive and finite, got {}",
                self.friction
            )));
        }
        if !self.linear.is_finite() {
            return Err(SpectralError::InvalidParams(
                "linear coefficient must be finite".into(),
            ));
        }
        if !(self.quadratic.is_finite() && self.quadratic >= 0.0) {
            return Err(SpectralError::InvalidParams(format!(
                "quadratic coefficient must be nonnegative, got {}",
                self.quadratic
            )));
        }
        Ok(())
    }
}

/// Truncated even power series for `Q`, scaled so the true coefficients are
/// `coeffs[j] * exp(scale_log)`. After [`series_solve`] the profile is
/// normalized to `Q(1) = 1` and `scale_log` is zero.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    params: RadialOdeParams,
    coeffs: Vec<f64>,
    scale_log: f64,
    normalized: bool,
}

impl RadialProfile {
    pub fn params(&self) -> &RadialOdeParams {
        &self.params
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scale_log(&self) -> f64 {
        self.scale_log
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Value of the full radial factor `Q(r) r^k` at `r` in [0, 1].
    pub fn evaluate(&self, r: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&r));
        let x = r * r;
        let mut acc = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * r.powi(self.k_power() as i32) * self.scale_log.exp()
    }

    /// Steklov eigenvalue of the mode, `k + Q'(1)/Q(1)`; scale invariant.
    pub fn steklov_value(&self) -> Result<f64> {
        let den = compensated_sum(self.coeffs.iter().copied());
        let num = compensated_sum(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| 2.0 * j as f64 * c),
        );
        let abs_sum: f64 = self.coeffs.iter().map(|c| c.abs()).sum();
        if den == 0.0 || den.abs() <= CANCELLATION_GUARD * abs_sum {
            return Err(SpectralError::DegenerateNormalization);
        }
        Ok(self.k_power() as f64 + num / den)
    }

    fn k_power(&self) -> u32 {
        self.params.k_power
    }
}

/// Runs the coefficient recursion with on-the-fly rescaling, returning the
/// scaled coefficients and the accumulated log scale. Coefficients are not
/// normalized here.
pub(crate) fn raw_series(params: &RadialOdeParams, max_order: usize) -> Result<(Vec<f64>, f64)> {
    params.validate()?;
    let a = params.linear;
    let b = params.quadratic;
    let half = 0.5 * (params.friction - 1.0);

    let mut coeffs: Vec<f64> = Vec::with_capacity(64);
    coeffs.push(1.0);
    let mut scale_log = 0.0f64;
    let mut max_mag = 1.0f64;

    for j in 1..=max_order {
        let c1 = coeffs[j - 1];
        let c2 = if j >= 2 { coeffs[j - 2] } else { 0.0 };
        let jf = j as f64;
        let cj = (a * c1 + b * c2) / (4.0 * jf * (jf + half));
        coeffs.push(cj);
        max_mag = max_mag.max(cj.abs());

        if max_mag > RESCALE_THRESHOLD {
            let inv = 1.0 / max_mag;
            for c in coeffs.iter_mut() {
                *c *= inv;
            }
            scale_log += max_mag.ln();
            max_mag = 1.0;
        }

        if j >= 2
            && coeffs[j].abs() <= TAIL_TOL * max_mag
            && coeffs[j - 1].abs() <= TAIL_TOL * max_mag
        {
            return Ok((coeffs, scale_log));
        }
    }
    Err(SpectralError::NonConvergence { max_order })
}

/// Solves the radial ODE by power series and normalizes to `Q(1) = 1`.
pub fn series_solve(params: &RadialOdeParams) -> Result<RadialProfile> {
    series_solve_with(params, MAX_ORDER)
}

pub fn series_solve_with(params: &RadialOdeParams, max_order: usize) -> Result<RadialProfile> {
    let (mut coeffs, _scale_log) = raw_series(params, max_order)?;
    let abs_sum: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let boundary = compensated_sum(coeffs.iter().copied());
    if boundary == 0.0 || boundary.abs() <= CANCELLATION_GUARD * abs_sum {
        return Err(SpectralError::DegenerateNormalization);
    }
    for c in coeffs.iter_mut() {
        *c /= boundary;
    }
    Ok(RadialProfile {
        params: *params,
        coeffs,
        scale_log: 0.0,
        normalized: true,
    })
}

/// Short local expansion of (Q, Q') at `r0`, used to seed integrations away
/// from the coordinate singularity at the origin.
fn seed_state(params: &RadialOdeParams, r0: f64, order: usize) -> (f64, f64) {
    let a = params.linear;
    let b = params.quadratic;
    let half = 0.5 * (params.friction - 1.0);
    let mut cj = vec![0.0f64; order + 1];
    cj[0] = 1.0;
    for j in 1..=order {
        let c2 = if j >= 2 { cj[j - 2] } else { 0.0 };
        let jf = j as f64;
        cj[j] = (a * cj[j - 1] + b * c2) / (4.0 * jf * (jf + half));
    }
    let x = r0 * r0;
    let mut q = 0.0f64;
    let mut qp = 0.0f64;
    let mut xj = 1.0f64;
    for (j, &c) in cj.iter().enumerate() {
        q += c * xj;
        qp += 2.0 * j as f64 * c * xj / r0;
        xj *= x;
    }
    (q, qp)
}

/// Computes the Steklov value through the logarithmic derivative
/// `u = Q'/Q`, which obeys `u' = (a + b r^2) - u^2 - (c/r) u`. Avoids the
/// huge dynamic range of the series at large `b` but fails with
/// [`SpectralError::RiccatiPole`] when `Q` vanishes inside the ball.
pub fn log_derivative_solve(params: &RadialOdeParams) -> Result<f64> {
    params.validate()?;
    let a = params.linear;
    let b = params.quadratic;
    let c = params.friction;

    let r0 = SEED_RADIUS;
    let (q, qp) = seed_state(params, r0, 8);
    let u0 = qp / q;

    let opts = Rk45Options {
        rel_tol: 1e-10,
        abs_tol: 1e-12,
        max_steps: 2_000_000,
        initial_step: None,
    };
    let rhs = |r: f64, y: &[f64; 1]| {
        let u = y[0];
        [(a + b * r * r) - u * u - c / r * u]
    };
    match ivp::integrate(rhs, (r0, 1.0), [u0], &opts, |_, y: &[f64; 1]| {
        y[0].abs() < LOG_DERIVATIVE_LIMIT
    }) {
        Ok(y) => Ok(params.k_power as f64 + y[0]),
        Err(IvpError::GuardStop { t } | IvpError::StepUnderflow { t }) => {
            Err(SpectralError::RiccatiPole { r: t })
        }
        Err(IvpError::StepLimitExceeded { t }) => Err(SpectralError::StepLimitExceeded { r: t }),
    }
}

/// Steklov eigenvalue of a mode, choosing the path by the size of the
/// quadratic coefficient: log-derivative for strong fields (falling back to
/// the series at an interior pole), series otherwise. A series whose
/// boundary sum cancels below working precision (negative `a` with large
/// fields) falls back to the log-derivative path, which has no cancellation.
pub fn steklov_eigenvalue(params: &RadialOdeParams) -> Result<f64> {
    if params.quadratic > RICCATI_CUTOFF {
        match log_derivative_solve(params) {
            Ok(v) => return Ok(v),
            Err(SpectralError::RiccatiPole { .. }) => {}
            Err(e) => return Err(e),
        }
        return series_solve(params)?.steklov_value();
    }
    match series_solve(params).and_then(|p| p.steklov_value()) {
        Ok(v) => Ok(v),
        Err(SpectralError::DegenerateNormalization) => log_derivative_solve(params),
        Err(e) => Err(e),
    }
}

/// The radial factor written as `Q(r) = e^{-t r^2 / 2} P(r)` with `t = sqrt(b)`.
///
/// Substituting this into the ODE turns the recursion into
/// `(2j+2)(2j+1+c) p_{j+1} = (a + t(1+c) + 4jt) p_j`, whose coefficients are
/// all positive whenever `a + t(1+c) >= 0` (true for every disk and 4-ball
/// mode, since `a >= -2kt` while `1 + c >= 2k + 2`). Positive terms mean the
/// partial sums never cancel, so pointwise values of `|Q(r) r^k|` stay fully
/// accurate even where the plain series loses all digits (negative `a`,
/// large fields). Used by the pointwise bound checks; the plain series stays
/// the eigenvalue reference.
#[derive(Debug, Clone)]
pub struct StableProfile {
    params: RadialOdeParams,
    /// t = sqrt(b); the factored exponent is -t r^2 / 2.
    field: f64,
    coeffs: Vec<f64>,
    /// log of the boundary value P(1) of the stored (scaled) coefficients.
    boundary_log: f64,
}

impl StableProfile {
    pub fn params(&self) -> &RadialOdeParams {
        &self.params
    }

    /// `Q(r) r^k` normalized to 1 at the boundary.
    pub fn value(&self, r: f64) -> f64 {
        let x = r * r;
        let mut p = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            p = p * x + c;
        }
        let k = self.params.k_power as f64;
        // r^k e^{-t(r^2-1)/2} P(r)/P(1), assembled in log form where safe.
        p * r.powf(k) * (-0.5 * self.field * (x - 1.0) - self.boundary_log).exp()
    }

    /// `k + P'(1)/P(1) - t`, equal to the Steklov value of the mode; every
    /// term in the ratio is positive, so no cancellation occurs.
    pub fn steklov_value(&self) -> f64 {
        let num = compensated_sum(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| 2.0 * j as f64 * c),
        );
        let den = compensated_sum(self.coeffs.iter().copied());
        self.params.k_power as f64 - self.field + num / den
    }
}

/// Builds the cancellation-free factored form of the radial profile.
pub fn stable_profile(params: &RadialOdeParams) -> Result<StableProfile> {
    params.validate()?;
    let a = params.linear;
    let c = params.friction;
    let t = params.quadratic.sqrt();
    let base = a + t * (1.0 + c);
    if base < 0.0 {
        return Err(SpectralError::InvalidParams(format!(
            "factored recursion not positive: a + t(1+c) = {base}"
        )));
    }

    let mut coeffs: Vec<f64> = Vec::with_capacity(64);
    coeffs.push(1.0);
    let mut scale_log = 0.0f64;
    let mut max_mag = 1.0f64;
    let mut done = false;
    for j in 0..MAX_ORDER {
        let jf = j as f64;
        let next = (base + 4.0 * jf * t) * coeffs[j] / ((2.0 * jf + 2.0) * (2.0 * jf + 1.0 + c));
        coeffs.push(next);
        max_mag = max_mag.max(next);
        if max_mag > RESCALE_THRESHOLD {
            let inv = 1.0 / max_mag;
            for p in coeffs.iter_mut() {
                *p *= inv;
            }
            scale_log += max_mag.ln();
            max_mag = 1.0;
        }
        if j >= 1 && coeffs[j + 1] <= TAIL_TOL * max_mag && coeffs[j] <= TAIL_TOL * max_mag {
            done = true;
            break;
        }
    }
    if !done {
        return Err(SpectralError::NonConvergence {
            max_order: MAX_ORDER,
        });
    }
    let boundary = compensated_sum(coeffs.iter().copied());
    // scale_log cancels between P(r) and P(1); only the stored-coefficient
    // boundary sum enters the normalization.
    let _ = scale_log;
    Ok(StableProfile {
        params: *params,
        field: t,
        coeffs,
        boundary_log: boundary.ln(),
    })
}
