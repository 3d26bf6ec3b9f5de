//! The real-line pairing `(f, g) = integral f g dx`, the skew-adjointness of
//! `T` under it, and the operator `y -> (1/omega) T[p T y]`.
//!
//! The pairing is bilinear: values of `T f` off the real axis are complex
//! and are integrated as they are, without conjugation.

use num_complex::Complex64;

use crate::error::Result;
use crate::foundations::{ComplexValue, I};
use crate::quadrature::integrate_refined;
use crate::quadrature_weight::{weight_analytic_raw, QuadratureScheme};
use crate::t_calculus::{apply_t, StripFunction};

/// `(f, g) = integral f(x) g(x) dx` over `[-X, X]`.
pub fn inner_product<F, G>(mut f: F, mut g: G, scheme: &QuadratureScheme) -> Result<ComplexValue>
where
    F: FnMut(f64) -> Complex64,
    G: FnMut(f64) -> Complex64,
{
    scheme.validate()?;
    integrate_refined(
        |x| f(x) * g(x),
        -scheme.half_width,
        scheme.half_width,
        scheme.panels,
        scheme.nodes_per_panel,
        scheme.tol,
    )
    .map(|e| e.value)
}

fn tf<F: Fn(Complex64) -> Complex64>(f: &StripFunction<F>, x: f64) -> Complex64 {
    apply_t(f, Complex64::new(x, 0.0)).expect("strip checked by the caller")
}

fn check_axis<F: Fn(Complex64) -> Complex64>(f: &StripFunction<F>) -> Result<()> {
    apply_t(f, Complex64::new(0.0, 0.0)).map(|_| ())
}

/// `|(T f, g) + (f, T g)|`.
pub fn antisymmetry_check<F, G>(f: &StripFunction<F>, g: &StripFunction<G>, scheme: &QuadratureScheme) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    check_axis(f)?;
    check_axis(g)?;
    let a = inner_product(|x| tf(f, x), |x| g.eval(Complex64::new(x, 0.0)), scheme)?;
    let b = inner_product(|x| f.eval(Complex64::new(x, 0.0)), |x| tf(g, x), scheme)?;
    Ok((a + b).norm())
}

/// The operator `y -> (1/omega) T[p T y]` with `omega > 0` and `p > 0` on
/// the real line. Eigenpairs `T[p T y_n] = lambda_n omega y_n` are not
/// constructed here.
pub struct SLOperator<W, P> {
    pub weight_fn: W,
    pub p_fn: StripFunction<P>,
}

impl<W, P> SLOperator<W, P>
where
    W: Fn(f64) -> f64,
    P: Fn(Complex64) -> Complex64,
{
    pub fn new(weight_fn: W, p_fn: StripFunction<P>) -> Self {
        Self { weight_fn, p_fn }
    }

    /// `T[p T f](z)` without the weight; needs `|Im z| = 0`.
    fn t_p_t<F: Fn(Complex64) -> Complex64>(&self, f: &StripFunction<F>, x: f64) -> Complex64 {
        let z = Complex64::new(x, 0.0);
        let inner = |w: Complex64| self.p_fn.eval(w) * (f.eval(w + 0.5 * I) - f.eval(w - 0.5 * I)) / I;
        (inner(z + 0.5 * I) - inner(z - 0.5 * I)) / I
    }

    fn check<F: Fn(Complex64) -> Complex64>(&self, f: &StripFunction<F>) -> Result<()> {
        check_axis(&self.p_fn)?;
        // f is evaluated at x +- i
        crate::t_calculus::apply_t_power(f, Complex64::new(0.0, 0.0), 2).map(|_| ())
    }

    /// Pointwise value `(1/omega(x)) T[p T f](x)`.
    pub fn apply<F: Fn(Complex64) -> Complex64>(&self, f: &StripFunction<F>, x: f64) -> Result<ComplexValue> {
        self.check(f)?;
        Ok(self.t_p_t(f, x) / (self.weight_fn)(x))
    }

    /// `(p T f, T f)`, real part.
    pub fn positivity<F: Fn(Complex64) -> Complex64>(&self, f: &StripFunction<F>, scheme: &QuadratureScheme) -> Result<f64> {
        check_axis(f)?;
        let v = inner_product(
            |x| self.p_fn.eval(Complex64::new(x, 0.0)) * tf(f, x),
            |x| tf(f, x),
            scheme,
        )?;
        Ok(v.re)
    }

    /// `(T p T f, g) - (T p T g, f)`, zero when `T` is skew-adjoint.
    pub fn mechanism_residual<F, G>(&self, f: &StripFunction<F>, g: &StripFunction<G>, scheme: &QuadratureScheme) -> Result<f64>
    where
        F: Fn(Complex64) -> Complex64,
        G: Fn(Complex64) -> Complex64,
    {
        self.check(f)?;
        self.check(g)?;
        let a = inner_product(|x| self.t_p_t(f, x), |x| g.eval(Complex64::new(x, 0.0)), scheme)?;
        let b = inner_product(|x| self.t_p_t(g, x), |x| f.eval(Complex64::new(x, 0.0)), scheme)?;
        Ok((a - b).norm())
    }
}

pub fn sl_apply<W, P, F>(op: &SLOperator<W, P>, f: &StripFunction<F>, x: f64) -> Result<ComplexValue>
where
    W: Fn(f64) -> f64,
    P: Fn(Complex64) -> Complex64,
    F: Fn(Complex64) -> Complex64,
{
    op.apply(f, x)
}

pub fn positivity_check<W, P, F>(op: &SLOperator<W, P>, f: &StripFunction<F>, scheme: &QuadratureScheme) -> Result<f64>
where
    W: Fn(f64) -> f64,
    P: Fn(Complex64) -> Complex64,
    F: Fn(Complex64) -> Complex64,
{
    op.positivity(f, scheme)
}

/// Entire test functions that decay in every horizontal strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// `H_k(z) e^{-z^2/2}`.
    Hermite(usize),
    /// `z^degree e^{-scale (z - center)^2}`.
    Gaussian { scale: f64, center: f64, degree: u32 },
}

impl TestFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            TestFunction::Hermite(k) => {
                let mut h0 = Complex64::new(1.0, 0.0);
                let mut h1 = 2.0 * z;
                if k == 0 {
                    return h0 * (-z * z / 2.0).exp();
                }
                for j in 1..k {
                    let h2 = 2.0 * z * h1 - 2.0 * j as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1 * (-z * z / 2.0).exp()
            }
            TestFunction::Gaussian { scale, center, degree } => {
                z.powu(degree) * (-scale * (z - center) * (z - center)).exp()
            }
        }
    }

    pub fn strip(self) -> StripFunction<impl Fn(Complex64) -> Complex64> {
        StripFunction::entire(move |z| self.eval(z))
    }
}

/// Ten pairs of Hermite functions and shifted Gaussians.
pub fn test_battery() -> Vec<(TestFunction, TestFunction)> {
    use TestFunction::*;
    let gauss = |scale, center, degree| Gaussian { scale, center, degree };
    vec![
        (gauss(1.0, 0.0, 0), gauss(1.0, 0.0, 0)),
        (gauss(1.0, 0.0, 0), gauss(1.0, 0.0, 1)),
        (Hermite(0), Hermite(1)),
        (Hermite(1), Hermite(2)),
        (Hermite(2), Hermite(3)),
        (Hermite(0), Hermite(4)),
        (Hermite(3), Hermite(5)),
        (gauss(0.5, 0.3, 0), gauss(2.0, -0.4, 2)),
        (Hermite(1), gauss(1.0, 0.5, 0)),
        (gauss(0.8, -1.0, 3), Hermite(2)),
    ]
}

/// `p(z) = omega_{lambda + 1/2}(z) / omega_lambda(z)` for one `phi`; the
/// exponential factors cancel, leaving a gamma ratio that is positive on the
/// real line and analytic for `|Im z| < lambda + 1/2`.
pub fn weight_ratio_p(lambda: f64) -> StripFunction<impl Fn(Complex64) -> Complex64> {
    let f = move |z: Complex64| {
        let num = weight_analytic_raw(lambda + 0.5, std::f64::consts::FRAC_PI_2, z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        num * crate::quadrature_weight::recip_weight_analytic(lambda, std::f64::consts::FRAC_PI_2, z)
    };
    StripFunction::new(f, lambda + 0.5 - 1e-9).expect("lambda > 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::eval_basis_phi;
    use std::f64::consts::PI;

    fn scheme() -> QuadratureScheme {
        QuadratureScheme {
            half_width: 14.0,
            panels: 28,
            nodes_per_panel: 32,
            tol: 1e-12,
        }
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gaussian_inner_product() {
        let g = |x: f64| r((-x * x).exp());
        let v = inner_product(g, g, &scheme()).unwrap();
        assert!((v.re - (PI / 2.0).sqrt()).abs() < 1e-12);
        let odd = inner_product(|x| r(x * (-x * x).exp()), g, &scheme()).unwrap();
        assert!(odd.norm() < 1e-14);
        let lhs = inner_product(|x| 2.0 * g(x) + r(x) * g(x), g, &scheme()).unwrap();
        let rhs = 2.0 * v + odd;
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn antisymmetry_on_battery() {
        for (f, g) in test_battery() {
            let res = antisymmetry_check(&f.strip(), &g.strip(), &scheme()).unwrap();
            assert!(res <= 1e-8, "{f:?} {g:?}: {res}");
        }
    }

    #[test]
    fn antisymmetry_residual_scales_quadratically() {
        let f = TestFunction::Gaussian { scale: 1.0, center: 0.2, degree: 1 };
        let g = TestFunction::Hermite(2);
        let base = antisymmetry_check(&f.strip(), &g.strip(), &scheme()).unwrap();
        let big = |z: Complex64| 3.0 * f.eval(z);
        let big_g = |z: Complex64| 3.0 * g.eval(z);
        let scaled = antisymmetry_check(&StripFunction::entire(big), &StripFunction::entire(big_g), &scheme()).unwrap();
        assert!(scaled <= 9.0 * base + 1e-14);
    }

    #[test]
    fn operator_on_basis_polynomial() {
        let op = SLOperator::new(|_| 1.0, StripFunction::entire(|_| Complex64::new(1.0, 0.0)));
        let f = StripFunction::entire(|z| eval_basis_phi(1.3, z, 2));
        for x in [-1.0, 0.0, 2.5] {
            assert!((sl_apply(&op, &f, x).unwrap() - r(-2.0)).norm() < 1e-13);
        }
        let k = StripFunction::entire(|_| Complex64::new(4.0, 0.0));
        assert_eq!(sl_apply(&op, &k, 0.3).unwrap(), r(0.0));
        let narrow = StripFunction::new(|z: Complex64| z, 0.5).unwrap();
        assert!(sl_apply(&op, &narrow, 0.0).is_err());
    }

    #[test]
    fn positivity() {
        let one = SLOperator::new(|_| 1.0, StripFunction::entire(|_| Complex64::new(1.0, 0.0)));
        let two = SLOperator::new(|_| 1.0, StripFunction::entire(|_| Complex64::new(2.0, 0.0)));
        let f = TestFunction::Gaussian { scale: 1.0, center: 0.0, degree: 0 }.strip();
        let a = positivity_check(&one, &f, &scheme()).unwrap();
        let b = positivity_check(&two, &f, &scheme()).unwrap();
        assert!(a > 0.0);
        assert!((b - 2.0 * a).abs() < 1e-14);
        let k = StripFunction::entire(|_| Complex64::new(1.0, 0.0));
        assert_eq!(positivity_check(&one, &k, &scheme()).unwrap(), 0.0);
    }

    #[test]
    fn mechanism_with_weight_ratio() {
        let p = weight_ratio_p(1.0);
        let v = p.eval(r(0.0));
        // Gamma(3/2)^2 / Gamma(1)^2 = pi / 4
        assert!((v - r(PI / 4.0)).norm() < 1e-14);
        let op = SLOperator::new(|_| 1.0, p);
        let f = TestFunction::Hermite(1).strip();
        let g = TestFunction::Gaussian { scale: 0.7, center: 0.3, degree: 2 }.strip();
        assert!(op.mechanism_residual(&f, &g, &scheme()).unwrap() < 1e-8);
        assert!(op.positivity(&g, &scheme()).unwrap() > 0.0);
    }
}
