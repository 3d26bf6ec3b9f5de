//! Randomized invariants over the parameter space.

use std::f64::consts::PI;

use meixner::foundations::rel_err;
use meixner::plane_wave::e_closed;
use meixner::polynomials::{
    eval_hyp, eval_recurrence, eval_sum, numerator_explicit, numerator_recurrence, MPParams,
};
use meixner::quadrature_weight::{weight, QuadratureScheme};
use meixner::recursion_asymptotics::{general_solution, gf_identity_check};
use meixner::sturm_liouville::{antisymmetry_check, TestFunction};
use meixner::t_calculus::{apply_t, lowering_pair, StripFunction};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn params() -> impl Strategy<Value = MPParams> {
    (0.2f64..4.0, 0.2f64..(PI - 0.2)).prop_map(|(l, p)| MPParams::new(l, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_routes_agree(p in params(), x in -8.0f64..8.0, n in 0usize..=20) {
        let rec = eval_recurrence(&p, c(x), n).unwrap().value(n);
        prop_assert!(rel_err(eval_hyp(&p, c(x), n), rec) < 1e-10);
        prop_assert!(rel_err(eval_sum(&p, c(x), n), rec) < 1e-10);
    }

    #[test]
    fn real_on_real_axis(p in params(), x in -8.0f64..8.0, n in 0usize..=30) {
        let v = eval_recurrence(&p, c(x), n).unwrap().value(n);
        prop_assert_eq!(v.im, 0.0);
    }

    #[test]
    fn reflection(p in params(), x in -6.0f64..6.0, n in 0usize..=20) {
        let q = MPParams::new(p.lambda(), PI - p.phi()).unwrap();
        let a = eval_recurrence(&p, c(x), n).unwrap().value(n);
        let b = eval_recurrence(&q, c(-x), n).unwrap().value(n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(rel_err(a, sign * b) < 1e-11);
    }

    #[test]
    fn weight_reflection_and_sign(p in params(), x in -15.0f64..15.0) {
        let q = MPParams::new(p.lambda(), PI - p.phi()).unwrap();
        let (a, b) = (weight(&p, x), weight(&q, -x));
        prop_assert!(a >= 0.0);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
    }

    #[test]
    fn lowering_relation(p in params(), x in -5.0f64..5.0, n in 1usize..=12, k in 1usize..=3) {
        prop_assume!(k <= n);
        let (l, r) = lowering_pair(&p, c(x), n, k).unwrap();
        prop_assert!(rel_err(l, r) < 1e-8);
    }

    #[test]
    fn exponential_eigenfunction(x in -5.0f64..5.0, t in -1.5f64..1.5) {
        let e = StripFunction::entire(move |z| e_closed(z, c(t)).unwrap());
        let lhs = apply_t(&e, c(x)).unwrap();
        prop_assert!(rel_err(lhs, Complex64::i() * t * e.eval(c(x))) < 1e-11);
    }

    #[test]
    fn numerators_by_convolution(p in params(), x in -4.0f64..4.0, n in 0usize..=15) {
        let rec = numerator_recurrence(&p, c(x), n).unwrap().value(n);
        let exp = numerator_explicit(&p, c(x), n);
        prop_assert!((exp - rec).norm() <= 1e-9 * rec.norm().max(1.0));
    }

    #[test]
    fn recursion_solutions(
        p in params(),
        x in -4.0f64..4.0,
        y in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        angle in 0.0f64..(2.0 * PI),
    ) {
        let (y0, y1) = (Complex64::new(y.0, y.1), Complex64::new(y.2, y.3));
        prop_assert!(general_solution(&p, c(x), y0, y1, 40).unwrap().max_triple_residual() < 1e-10);
        let t = Complex64::from_polar(0.2, angle);
        let (l, r) = gf_identity_check(&p, c(x), y0, y1, t, 80).unwrap();
        prop_assert!((l - r).norm() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn t_is_skew(center in -1.5f64..1.5, scale in 0.6f64..1.5, d1 in 0u32..3, d2 in 0u32..3) {
        let scheme = QuadratureScheme { half_width: 14.0, panels: 28, nodes_per_panel: 32, tol: 1e-12 };
        let f = TestFunction::Gaussian { scale, center, degree: d1 }.strip();
        let g = TestFunction::Gaussian { scale: 1.0, center: -center, degree: d2 }.strip();
        prop_assert!(antisymmetry_check(&f, &g, &scheme).unwrap() < 1e-8);
    }
}
