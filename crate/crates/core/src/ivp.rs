//! Adaptive Dormand-Prince 5(4) integration for small first-order systems.
//!
//! The embedded pair supplies a per-step error estimate; steps are accepted
//! when the weighted RMS error is at most one and the step size follows the
//! usual fifth-order controller. The first-same-as-last stage is reused.

#[derive(Debug, Clone, Copy)]
pub struct Rk45Options {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    pub initial_step: Option<f64>,
}

impl Default for Rk45Options {
    fn default() -> Self {
        Rk45Options {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
            initial_step: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IvpError {
    /// Accepted-step budget exhausted before reaching the right endpoint.
    StepLimitExceeded { t: f64 },
    /// Error control drove the step below the resolvable scale (near-singular RHS).
    StepUnderflow { t: f64 },
    /// The caller's guard rejected the state after an accepted step.
    GuardStop { t: f64 },
}

const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
const C: [f64; 5] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0];

fn axpy<const N: usize>(y: &[f64; N], h: f64, coeffs: &[f64], ks: &[[f64; N]]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in coeffs.iter().zip(ks) {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `span.0` to `span.1` (forward only) and
/// returns the state at the right endpoint. `guard` is consulted after each
/// accepted step; returning `false` aborts the run.
pub fn integrate<const N: usize, F, G>(
    f: F,
    span: (f64, f64),
    y0: [f64; N],
    opts: &Rk45Options,
    mut guard: G,
) -> Result<[f64; N], IvpError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: FnMut(f64, &[f64; N]) -> bool,
{
    let (t0, t1) = span;
    assert!(t1 > t0, "integration span must be forward");
    let length = t1 - t0;
    let mut t = t0;
    let mut y = y0;
    let mut h = opts.initial_step.unwrap_or(length / 100.0).min(length);
    let mut k1 = f(t, &y);
    let mut steps = 0usize;

    while t < t1 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(IvpError::StepLimitExceeded { t });
        }
        if h < 1e-14 * length {
            return Err(IvpError::StepUnderflow { t });
        }
        h = h.min(t1 - t);

        let k2 = f(t + C[0] * h, &axpy(&y, h, &A2, &[k1]));
        let k3 = f(t + C[1] * h, &axpy(&y, h, &A3, &[k1, k2]));
        let k4 = f(t + C[2] * h, &axpy(&y, h, &A4, &[k1, k2, k3]));
        let k5 = f(t + C[3] * h, &axpy(&y, h, &A5, &[k1, k2, k3, k4]));
        let k6 = f(t + C[4] * h, &axpy(&y, h, &A6, &[k1, k2, k3, k4, k5]));
        let y5 = axpy(&y, h, &B5, &[k1, k2, k3, k4, k5, k6]);
        let k7 = f(t + h, &y5);
        let y4 = axpy(&y, h, &B4, &[k1, k2, k3, k4, k5, k6, k7]);

        let mut err_sq = 0.0;
        for i in 0..N {
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4[i]) / scale;
            err_sq += e * e;
        }
        let err_norm = (err_sq / N as f64).sqrt();

        if err_norm <= 1.0 {
            t += h;
            y = y5;
            k1 = k7;
            if !guard(t, &y) {
                return Err(IvpError::GuardStop { t });
            }
        }
        let factor = if err_norm > 0.0 {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    Ok(y)
}
