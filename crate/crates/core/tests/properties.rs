use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use kgua::harness::{fit_loglog, parse_csv, to_csv_string, ConvergenceRecord};
use kgua::integrators::{PrecomputedSymbols, StepperKind};
use kgua::model::{reconstruct_z, to_first_order, InitialDataSpec, KGState};
use kgua::phi::{phi1, phi2, psi2};
use kgua::spectral::{lc_value, Grid, SpectralField};

fn z_strategy() -> impl Strategy<Value = Complex64> {
    (-12.0f64..2.0, -3.2f64..3.2).prop_map(|(e, a)| Complex64::from_polar(10f64.powf(e), a))
}

proptest! {
    #[test]
    fn phi_identities(z in z_strategy()) {
        let one = Complex64::new(1.0, 0.0);
        let (p1, p2, q2) = (phi1(z), phi2(z), psi2(z));
        prop_assert!((z * p1 + one - z.exp()).norm() <= 1e-12 * ((z * p1).norm() + 1.0));
        prop_assert!((z * p2 + one - p1).norm() <= 1e-12 * ((z * p2).norm() + 1.0));
        prop_assert!((p1 - p2 - q2).norm() <= 1e-12 * (p1.norm() + 1.0));
    }

    #[test]
    fn phi1_is_a_contraction_on_the_imaginary_axis(x in -1e6f64..1e6) {
        prop_assert!(phi1(Complex64::new(0.0, x)).norm() <= 1.0);
    }

    #[test]
    fn lc_is_between_zero_and_half_k2(c in 1e-3f64..1e8, k in 0i64..512) {
        let k2 = (k * k) as f64;
        let l = lc_value(c, k2);
        prop_assert!(l >= 0.0 && l <= 0.5 * k2);
    }

    #[test]
    fn first_order_variable_round_trips(c in 0.5f64..1e4, seed in 0u64..1000) {
        let g = Arc::new(Grid::new(1, 16, false).unwrap());
        let real = |theta: f64, seed: u64| {
            let f = kgua::model::make_rough_data(&InitialDataSpec::rough(theta, seed), &g).unwrap();
            (&f + &f.conj()).scale_re(0.5)
        };
        let (z0, zt0) = (real(1.5, seed), real(2.5, seed + 1));
        let s = to_first_order(&z0, &zt0, c).unwrap();
        let back = reconstruct_z(&s);
        prop_assert!((&back - &z0).hr_norm(0.0) <= 1e-13 * z0.hr_norm(0.0));
    }

    #[test]
    fn coarse_rough_data_is_a_truncation(theta in 0.6f64..4.0, seed in 0u64..1000) {
        let spec = InitialDataSpec::rough(theta, seed);
        let coarse = Arc::new(Grid::new(1, 16, false).unwrap());
        let fine = Arc::new(Grid::new(1, 64, false).unwrap());
        let a = kgua::model::make_rough_data(&spec, &coarse).unwrap();
        let b = kgua::model::make_rough_data(&spec, &fine).unwrap();
        for k in -7i64..=7 {
            prop_assert_eq!(a.coeff([k, 0]), b.coeff([k, 0]));
        }
    }

    #[test]
    fn power_laws_fit_exactly(p in -3.0f64..3.0, logc in -5.0f64..5.0) {
        let x: Vec<f64> = (0..6).map(|j| 2f64.powi(-j)).collect();
        let y: Vec<f64> = x.iter().map(|t| logc.exp() * t.powf(p)).collect();
        let f = fit_loglog(&x, &y, 0.0).unwrap();
        prop_assert!((f.slope - p).abs() < 1e-10);
        prop_assert!((f.intercept - logc).abs() < 1e-9);
    }

    #[test]
    fn csv_round_trip(err in 1e-300f64..1e3, c in 1e-3f64..1e6, tau in 1e-9f64..1.0, ms in 0.0f64..1e6) {
        let rec = ConvergenceRecord {
            scheme: StepperKind::EXP_EULER,
            c, tau, n: 64, data: "rough:1".into(), r: 1.0, error: err, wall_time_ms: ms,
        };
        prop_assert_eq!(parse_csv(&to_csv_string(std::slice::from_ref(&rec))).unwrap(), vec![rec]);
    }

    #[test]
    fn steps_commute_with_translation(c in 0.5f64..200.0, tau in 1e-4f64..0.1, shift in -3.0f64..3.0) {
        let g = Arc::new(Grid::new(1, 16, true).unwrap());
        let s = InitialDataSpec::smooth().initial_state(&g, c).unwrap();
        let translate = |f: &SpectralField| {
            let coeffs = f
                .coeffs()
                .iter()
                .zip(g.modes())
                .map(|(a, k)| a * Complex64::from_polar(1.0, -(k[0] as f64) * shift))
                .collect();
            SpectralField::from_coeffs(&g, coeffs).unwrap()
        };
        let moved = KGState::new(translate(&s.u), c).unwrap();
        let pre = PrecomputedSymbols::new(&g, c, tau).unwrap();
        for kind in [StepperKind::UA_LRI1, StepperKind::UA_LRI2, StepperKind::EXP_EULER] {
            let a = translate(&kind.step(&s, &pre).unwrap().u);
            let b = kind.step(&moved, &pre).unwrap().u;
            prop_assert!((&a - &b).hr_norm(1.0) < 1e-12, "{}", kind);
        }
    }
}
