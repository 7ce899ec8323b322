//! Property tests over randomized modes, potentials, and domains.

use proptest::prelude::*;

use magsteklov::cheeger::{cheeger_quotients, TestDomain};
use magsteklov::frustration::{frustration_punctured, FrustrationSpec};
use magsteklov::radial::{series_solve, stable_profile, RadialOdeParams, Sign};
use magsteklov::spectra::disk_steklov_spectrum;

fn sign_strategy() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    /// The stored series coefficients satisfy the defining recursion; any
    /// indexing or rescaling bug breaks this identity immediately.
    #[test]
    fn recursion_residual_vanishes(
        k in 0u32..=12,
        t in 0.0f64..50.0,
        sign in sign_strategy(),
    ) {
        let params = RadialOdeParams::disk_mode(k, sign, t).unwrap();
        let profile = series_solve(&params);
        // Deep cancellation is a declared rejection, not a property failure.
        let profile = match profile {
            Ok(p) => p,
            Err(magsteklov::SpectralError::DegenerateNormalization) => return Ok(()),
            Err(e) => panic!("unexpected error: {e}"),
        };
        let cs = profile.coeffs();
        let half = 0.5 * (params.friction - 1.0);
        for j in 1..cs.len() {
            let jf = j as f64;
            let lhs = 4.0 * jf * (jf + half) * cs[j];
            let rhs = params.linear * cs[j - 1]
                + if j >= 2 { params.quadratic * cs[j - 2] } else { 0.0 };
            // Scale by the terms entering the identity; evaluating it costs
            // a few ulps of each.
            let scale = lhs.abs()
                + (params.linear * cs[j - 1]).abs()
                + if j >= 2 { (params.quadratic * cs[j - 2]).abs() } else { 0.0 };
            prop_assert!((lhs - rhs).abs() <= 1e-13 * scale + 1e-300, "j = {j}");
        }
    }

    /// Reversing the field reverses the roles of the two signs, so the
    /// spectrum as a multiset is even in t.
    #[test]
    fn disk_spectrum_is_even_in_field(t in 0.0f64..10.0) {
        let forward = disk_steklov_spectrum(t, 6).unwrap();
        let backward = disk_steklov_spectrum(-t, 6).unwrap();
        let f = forward.expanded_values();
        let b = backward.expanded_values();
        prop_assert_eq!(f.len(), b.len());
        for (x, y) in f.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }

    /// A minus mode at field t is the same ODE as a plus mode at -t.
    #[test]
    fn sign_flip_equals_field_flip(k in 1u32..=10, t in 0.0f64..20.0) {
        let minus = RadialOdeParams::disk_mode(k, Sign::Minus, t).unwrap();
        let plus = RadialOdeParams::disk_mode(k, Sign::Plus, -t).unwrap();
        prop_assert_eq!(minus, plus);
    }

    /// The factored profile and the plain series describe the same function
    /// wherever the plain series keeps its digits.
    #[test]
    fn factored_profile_agrees_with_series(
        k in 0u32..=8,
        t in 0.0f64..8.0,
        sign in sign_strategy(),
        r in 0.0f64..=1.0,
    ) {
        let params = RadialOdeParams::disk_mode(k, sign, t).unwrap();
        let profile = series_solve(&params).unwrap();
        let stable = stable_profile(&params).unwrap();
        prop_assert!((profile.evaluate(r) - stable.value(r)).abs() <= 1e-10);
    }

    /// Shifting the angular profile by an integer leaves the punctured
    /// frustration value unchanged (the shift window just relabels).
    #[test]
    fn frustration_is_gauge_shift_invariant(
        c0 in -3.0f64..3.0,
        c1 in -3.0f64..3.0,
        c2 in -3.0f64..3.0,
        shift in -3i64..=3,
    ) {
        let g = move |r: f64| c0 + c1 * r + c2 * r * r;
        let shifted = move |r: f64| c0 + shift as f64 + c1 * r + c2 * r * r;
        let base = frustration_punctured(&FrustrationSpec::punctured(&g, 1.0)).unwrap();
        let moved = frustration_punctured(&FrustrationSpec::punctured(&shifted, 1.0)).unwrap();
        prop_assert!(
            (base.value - moved.value).abs() <= 1e-9 * (1.0 + base.value),
            "{} vs {}", base.value, moved.value
        );
    }

    /// Boundary spectra are 1-periodic in the field; the window-restricted
    /// multiset comparison must accept every t in [0, 1].
    #[test]
    fn circle_spectrum_periodicity(t in 0.0f64..=1.0) {
        let report = magsteklov::bounds::gauge_periodicity_check(t, 8).unwrap();
        prop_assert!(report.satisfied, "t = {t}: {}", report.detail);
    }

    /// Areas and boundary lengths of the test domains satisfy the exact
    /// disk-geometry identities.
    #[test]
    fn test_domain_geometry(s in 0.01f64..0.99) {
        let disk = TestDomain::centered_disk(s).unwrap();
        prop_assert!((disk.area() - std::f64::consts::PI * s * s).abs() < 1e-15);
        prop_assert!(
            (disk.interior_boundary_length() - 2.0 * std::f64::consts::PI * s).abs() < 1e-15
        );
        prop_assert_eq!(disk.exterior_boundary_length(), 0.0);

        let annulus = TestDomain::annulus(s).unwrap();
        prop_assert!(
            (annulus.area() + disk.area() - std::f64::consts::PI).abs() < 1e-15
        );
        prop_assert!(
            (annulus.exterior_boundary_length() - 2.0 * std::f64::consts::PI).abs() < 1e-15
        );
    }

    /// At zero field the annulus quotient collapses to the isoperimetric
    /// ratio 2s/(1-s^2), and h' to s.
    #[test]
    fn zero_field_annulus_quotients(s in 0.05f64..0.95) {
        let q = cheeger_quotients(0.0, TestDomain::annulus(s).unwrap()).unwrap();
        prop_assert!((q.h_quotient - 2.0 * s / (1.0 - s * s)).abs() < 1e-9);
        prop_assert!((q.h_prime_quotient.unwrap() - s).abs() < 1e-9);
    }
}
