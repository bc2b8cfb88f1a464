//! Property tests for structural invariants of the variational reexpansion.

use num::complex::Complex64;
use proptest::prelude::*;
use resummation::series::PerturbationSeries;
use resummation::variational::build_reexpansion;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// At the trial frequency equal to the bare frequency, the reexpansion
    /// collapses back to the plain partial sum for any order and coupling.
    #[test]
    fn reexpansion_reduces_to_partial_sum(
        g in 0.0f64..2.0,
        order in 1usize..6,
        omega in 0.5f64..2.0,
    ) {
        let s = PerturbationSeries::oscillator(omega, order).unwrap();
        let appr = build_reexpansion(&s, order).unwrap();
        let w = appr.eval_w_real(g, omega).unwrap();
        let ps = s.partial_sum(g, order);
        prop_assert!((w - ps).abs() <= 1e-12 * ps.abs().max(1.0));
    }

    /// W_N has real coefficients in the trial frequency, so it commutes with
    /// complex conjugation.
    #[test]
    fn eval_commutes_with_conjugation(
        g in -0.5f64..2.0,
        re in 0.3f64..2.5,
        im in -1.0f64..1.0,
        order in 1usize..5,
    ) {
        let s = PerturbationSeries::oscillator(1.0, order).unwrap();
        let appr = build_reexpansion(&s, order).unwrap();
        let z = Complex64::new(re, im);
        let w = appr.eval_w(g, z).unwrap();
        let wc = appr.eval_w(g, z.conj()).unwrap();
        let scale = w.norm().max(1.0);
        prop_assert!((wc - w.conj()).norm() <= 1e-12 * scale);
    }

    /// The selected resummed energy scales like E(g; omega) =
    /// omega * E(g / omega^3; 1).
    #[test]
    fn resummed_energy_scaling(
        g in 0.01f64..5.0,
        omega in 0.5f64..2.0,
        order in 1usize..4,
    ) {
        let s1 = PerturbationSeries::oscillator(1.0, order).unwrap();
        let sw = PerturbationSeries::oscillator(omega, order).unwrap();
        let a1 = build_reexpansion(&s1, order).unwrap();
        let aw = build_reexpansion(&sw, order).unwrap();
        let lhs = aw.evaluate(g).unwrap().value;
        let rhs = omega * a1.evaluate(g / omega.powi(3)).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-3));
    }
}
