//! Independent cross-check for the series engine.
//!
//! Integrates the second-order radial equation as the first-order system
//! `(Q, Q')` with the adaptive embedded pair, seeded just off the origin by
//! a short local expansion. This path shares no series machinery with
//! [`crate::radial::series_solve`] beyond that few-term seed, so agreement
//! between the two certifies both.

use crate::error::{Result, SpectralError};
use crate::ivp::{self, IvpError, Rk45Options};
use crate::radial::RadialOdeParams;

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Where integration starts; the coordinate singularity sits at r = 0.
    pub seed_radius: f64,
    /// Terms of the local expansion used to seed (Q, Q').
    pub seed_order: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed_radius: 1e-3,
            seed_order: 6,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
        }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        if !(self.seed_radius > 0.0 && self.seed_radius < 0.5) {
            return Err(SpectralError::InvalidParams(format!(
                "seed radius {} outside (0, 0.5)",
                self.seed_radius
            )));
        }
        if self.seed_order == 0 || self.rel_tol <= 0.0 || self.abs_tol <= 0.0 {
            return Err(SpectralError::InvalidParams(
                "oracle tolerances and seed order must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Steklov value `k + Q'(1)/Q(1)` via direct integration of the linear ODE.
pub fn oracle_steklov_value(params: &RadialOdeParams, config: &OracleConfig) -> Result<f64> {
    config.validate()?;
    let a = params.linear;
    let b = params.quadratic;
    let c = params.friction;

    // Local seed: the same two-term recursion, hand-rolled to a few terms.
    let half = 0.5 * (c - 1.0);
    let mut cj = vec![0.0f64; config.seed_order + 1];
    cj[0] = 1.0;
    for j in 1..=config.seed_order {
        let c2 = if j >= 2 { cj[j - 2] } else { 0.0 };
        let jf = j as f64;
        cj[j] = (a * cj[j - 1] + b * c2) / (4.0 * jf * (jf + half));
    }
    let r0 = config.seed_radius;
    let mut q0 = 0.0f64;
    let mut qp0 = 0.0f64;
    let mut pow = 1.0f64;
    for (j, &coef) in cj.iter().enumerate() {
        q0 += coef * pow;
        qp0 += 2.0 * j as f64 * coef * pow / r0;
        pow *= r0 * r0;
    }

    let opts = Rk45Options {
        rel_tol: config.rel_tol,
        abs_tol: config.abs_tol,
        max_steps: config.max_steps,
        initial_step: None,
    };
    let rhs = |r: f64, y: &[f64; 2]| [y[1], (a + b * r * r) * y[0] - c / r * y[1]];

    let mut peak = q0.abs();
    let result = ivp::integrate(rhs, (r0, 1.0), [q0, qp0], &opts, |_, y: &[f64; 2]| {
        peak = peak.max(y[0].abs());
        true
    });
    match result {
        Ok(y) => {
            if y[0].abs() <= 1e-12 * peak {
                return Err(SpectralError::SingularSolution);
            }
            Ok(params.k_power as f64 + y[1] / y[0])
        }
        Err(IvpError::StepLimitExceeded { t } | IvpError::StepUnderflow { t }) => {
            Err(SpectralError::StepLimitExceeded { r: t })
        }
        Err(IvpError::GuardStop { .. }) => unreachable!("oracle guard never rejects"),
    }
}
