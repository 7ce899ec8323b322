//! Bessel function J0 by its power series and its first positive zero.
//!
//! Only small arguments are ever needed here (the first zero sits below 3),
//! where the alternating series is accurate to machine precision.

/// J0(x) = sum_m (-1)^m (x/2)^{2m} / (m!)^2, reliable for |x| <= 12.
pub fn j0(x: f64) -> f64 {
    debug_assert!(x.abs() <= 12.0);
    let q = -0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for m in 1..60 {
        term *= q / ((m * m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// First positive zero of J0, bracketed in [2, 3] and bisected to full precision.
pub fn first_j0_zero() -> f64 {
    let mut lo = 2.0f64;
    let mut hi = 3.0f64;
    // J0(2) > 0 > J0(3), so the sign test below keeps the root bracketed.
    debug_assert!(j0(lo) > 0.0 && j0(hi) < 0.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_zero() {
        assert_eq!(j0(0.0), 1.0);
    }

    #[test]
    fn j0_reference_values() {
        // Abramowitz & Stegun table values.
        assert!((j0(1.0) - 0.7651976865579666).abs() < 1e-14);
        assert!((j0(2.0) - 0.22389077914123567).abs() < 1e-14);
        assert!((j0(3.0) + 0.2600519549019335).abs() < 1e-14);
    }

    #[test]
    fn first_zero_matches_reference() {
        let z = first_j0_zero();
        assert!((z - 2.404825557695773).abs() < 1e-12);
        assert!(j0(z).abs() < 1e-12);
    }
}
