use num_complex::Complex64;
use proptest::prelude::*;
use quadzeta::complexzeros::{winding_count, Rectangle};
use quadzeta::dirichlet::enumerate_characters;
use quadzeta::identities::fe_residual;
use quadzeta::sfcore::{hurwitz_zeta, hurwitz_zeta_da, q_eval, xi_q};
use quadzeta::{AlphaParam, EvalSettings};

fn cfg() -> EvalSettings {
    EvalSettings::default()
}

fn near_removable(s: Complex64) -> bool {
    // Points where the guard circles of s and 1-s overlap a pole of Γ.
    s.im.abs() < 0.2 && (s.re - s.re.round()).abs() < 0.2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn xi_is_symmetric(
        sigma in -2.0f64..3.0,
        t in 0.0f64..40.0,
        ai in 0usize..4,
    ) {
        let a = AlphaParam::quadrilateral([0.1, 1.0 / 6.0, 0.3, 0.5][ai]).unwrap();
        let s = Complex64::new(sigma, t);
        let x = xi_q(s, a, &cfg()).unwrap().value;
        let y = xi_q(1.0 - s, a, &cfg()).unwrap().value;
        prop_assert!((x - y).norm() <= 1e-9 * (1.0 + x.norm()), "{x} vs {y}");
    }

    #[test]
    fn xi_is_real_on_the_critical_line(t in 0.0f64..60.0, a in 0.01f64..=0.5) {
        let a = AlphaParam::quadrilateral(a).unwrap();
        let x = xi_q(Complex64::new(0.5, t), a, &cfg()).unwrap().value;
        prop_assert!(x.im.abs() <= 1e-10 * (1.0 + x.re.abs()));
    }

    #[test]
    fn conjugate_symmetry(sigma in -3.0f64..4.0, t in 0.3f64..50.0, a in 0.01f64..=0.5) {
        let a = AlphaParam::quadrilateral(a).unwrap();
        let s = Complex64::new(sigma, t);
        let up = q_eval(s, a, &cfg()).unwrap().value;
        let down = q_eval(s.conj(), a, &cfg()).unwrap().value;
        prop_assert!((up - down.conj()).norm() <= 1e-12 * (1.0 + up.norm()));
    }

    #[test]
    fn functional_equation(sigma in -2.0f64..3.0, t in 0.0f64..30.0, a in 0.02f64..=0.5) {
        let s = Complex64::new(sigma, t);
        prop_assume!(!near_removable(s) && !near_removable(1.0 - s));
        let r = fe_residual(s, AlphaParam::quadrilateral(a).unwrap(), &cfg()).unwrap();
        prop_assert!(r.q_equation.rel_residual <= 1e-9, "{:?}", r.q_equation);
    }

    #[test]
    fn derivative_in_a_matches_finite_difference(
        sigma in -1.5f64..3.0,
        t in 0.0f64..10.0,
        a in 0.1f64..0.9,
    ) {
        let s = Complex64::new(sigma, t);
        prop_assume!((s - 1.0).norm() > 0.1);
        let h = 1e-6;
        let f = |x: f64| hurwitz_zeta(s, AlphaParam::new(x).unwrap(), &cfg()).unwrap().value;
        let d1 = (f(a + h) - f(a - h)) / (2.0 * h);
        let d2 = (f(a + 2.0 * h) - f(a - 2.0 * h)) / (4.0 * h);
        let richardson = (4.0 * d1 - d2) / 3.0;
        let exact = hurwitz_zeta_da(s, AlphaParam::new(a).unwrap()).unwrap().value;
        prop_assert!((exact - richardson).norm() <= 1e-7 * (1.0 + exact.norm()), "{exact} vs {richardson}");
    }

    #[test]
    fn characters_are_multiplicative(q in 2u32..=64, m in 0i64..500, n in 0i64..500) {
        for chi in enumerate_characters(q).unwrap() {
            let lhs = chi.value(m * n);
            let rhs = chi.value(m) * chi.value(n);
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn winding_counts_pair_under_conjugation(
        lo in -1.5f64..0.0,
        width in 1.0f64..3.0,
        t0 in 0.2f64..20.0,
        height in 1.0f64..10.0,
        a in 0.15f64..=0.5,
    ) {
        let a = AlphaParam::quadrilateral(a).unwrap();
        let rect = Rectangle::new(lo, lo + width, t0, t0 + height).unwrap();
        let up = winding_count(&rect, a, &cfg()).unwrap();
        let down = winding_count(&rect.conjugate(), a, &cfg()).unwrap();
        prop_assert_eq!(up.count, down.count);
    }
}
