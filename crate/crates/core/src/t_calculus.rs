//! The central difference operator `T f(x) = (f(x + i/2) - f(x - i/2)) / i`.
//!
//! `T` is applied by evaluating the function at the shifted complex points,
//! so the wrapped evaluator must be analytic in a band around the real axis
//! wide enough for the shifts requested.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundations::{ComplexValue, I};
use crate::polynomials::{eval_any_lambda, MPParams};
use crate::quadrature_weight::weight_analytic_raw;

/// An evaluator together with the half-width of the band `|Im z| <= h`
/// where it is known to be analytic.
#[derive(Clone)]
pub struct StripFunction<F> {
    evaluator: F,
    strip_halfwidth: f64,
}

impl<F: Fn(ComplexValue) -> ComplexValue> StripFunction<F> {
    pub fn new(evaluator: F, strip_halfwidth: f64) -> Result<Self> {
        if !(strip_halfwidth >= 0.5) {
            return Err(Error::InvalidParams(format!(
                "strip half-width must be at least 1/2, got {strip_halfwidth}"
            )));
        }
        Ok(Self {
            evaluator,
            strip_halfwidth,
        })
    }

    /// An entire function: every shift is admissible.
    pub fn entire(evaluator: F) -> Self {
        Self {
            evaluator,
            strip_halfwidth: f64::INFINITY,
        }
    }

    pub fn strip_halfwidth(&self) -> f64 {
        self.strip_halfwidth
    }

    pub fn eval(&self, z: ComplexValue) -> ComplexValue {
        (self.evaluator)(z)
    }

    fn check(&self, x: ComplexValue, k: usize) -> Result<()> {
        let required = x.im.abs() + k as f64 / 2.0;
        if required > self.strip_halfwidth {
            return Err(Error::StripViolation {
                required,
                available: self.strip_halfwidth,
            });
        }
        Ok(())
    }
}

/// `T f` at `x` without a strip check.
pub fn central_difference<F: FnMut(Complex64) -> Complex64>(mut f: F, x: Complex64) -> Complex64 {
    (f(x + 0.5 * I) - f(x - 0.5 * I)) / I
}

/// `T^k f(x) = (1/i)^k sum_j (-1)^j C(k, j) f(x + i (k - 2j)/2)`, without a
/// strip check.
pub fn central_difference_power<F: FnMut(Complex64) -> Complex64>(mut f: F, x: Complex64, k: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    for j in 0..=k {
        let shift = (k as f64 - 2.0 * j as f64) / 2.0;
        let term = binom * f(x + I * shift);
        sum += if j % 2 == 0 { term } else { -term };
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    sum * (-I).powu(k as u32)
}

pub fn apply_t<F: Fn(ComplexValue) -> ComplexValue>(f: &StripFunction<F>, x: ComplexValue) -> Result<ComplexValue> {
    f.check(x, 1)?;
    Ok(central_difference(&f.evaluator, x))
}

pub fn apply_t_power<F: Fn(ComplexValue) -> ComplexValue>(
    f: &StripFunction<F>,
    x: ComplexValue,
    k: usize,
) -> Result<ComplexValue> {
    f.check(x, k)?;
    Ok(central_difference_power(&f.evaluator, x, k))
}

/// `(T^k P_n^(lambda)(x), (2 sin phi)^k P_{n-k}^(lambda + k/2)(x))`.
pub fn lowering_pair(
    params: &MPParams,
    x: ComplexValue,
    n: usize,
    k: usize,
) -> Result<(ComplexValue, ComplexValue)> {
    if k < 1 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let (l, phi) = (params.lambda(), params.phi());
    let lhs = central_difference_power(|z| eval_any_lambda(l, phi, z, n), x, k);
    let rhs = (2.0 * phi.sin()).powi(k as i32) * eval_any_lambda(l + k as f64 / 2.0, phi, x, n - k);
    Ok((lhs, rhs))
}

/// `(T[omega_lambda P_n^(lambda)](x), -(n+1) omega_{lambda-1/2}(x) P_{n+1}^(lambda-1/2)(x))`.
pub fn raising_pair(params: &MPParams, x: ComplexValue, n: usize) -> Result<(ComplexValue, ComplexValue)> {
    let (l, phi) = (params.lambda(), params.phi());
    if l <= 0.5 {
        return Err(Error::InvalidParams(format!(
            "raising needs lambda > 1/2, got {l}"
        )));
    }
    if x.im.abs() > 0.5 {
        return Err(Error::StripViolation {
            required: x.im.abs() + 0.5,
            available: 1.0,
        });
    }
    let weighted = |z: Complex64| -> Result<Complex64> {
        Ok(weight_analytic_raw(l, phi, z)? * eval_any_lambda(l, phi, z, n))
    };
    let lhs = (weighted(x + 0.5 * I)? - weighted(x - 0.5 * I)?) / I;
    let rhs = -((n + 1) as f64)
        * weight_analytic_raw(l - 0.5, phi, x)?
        * eval_any_lambda(l - 0.5, phi, x, n + 1);
    Ok((lhs, rhs))
}
