//! The T-exponential `E(x, t) = exp(2 i x arcsinh(t/2))` and its expansion
//! in Meixner-Pollaczek polynomials.
//!
//! `E` is the eigenfunction `T E = i t E`; for real `x` and `t` it has unit
//! modulus, and `E(x, 2 sinh(s/2)) = e^{i x s}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundations::{arcsinh, cpow, ComplexValue, I};
use crate::polynomials::{eval_basis_phi, eval_recurrence, MPParams};

fn check_branch(t: Complex64) -> Result<()> {
    if (t - 2.0 * I).norm() < 1e-300 || (t + 2.0 * I).norm() < 1e-300 {
        return Err(Error::BranchPoint { re: t.re, im: t.im });
    }
    Ok(())
}

/// `exp(2 i x arcsinh(t/2))`.
pub fn e_closed(x: ComplexValue, t: ComplexValue) -> Result<ComplexValue> {
    check_branch(t)?;
    Ok((2.0 * I * x * arcsinh(t / 2.0)).exp())
}

/// `g_lambda(t) = sqrt(1 + t^2/4) (t/2 + sqrt(1 + t^2/4))^{-2 lambda}`.
pub fn g_normalizer(lambda: f64, t: ComplexValue) -> ComplexValue {
    let s = (1.0 + t * t / 4.0).sqrt();
    s * cpow(t / 2.0 + s, Complex64::new(-2.0 * lambda, 0.0))
}

/// `g_lambda(t) sum_{n <= N} phi_n(x) t^n / n!`.
pub fn e_series(lambda: f64, x: ComplexValue, t: ComplexValue, n_max: usize) -> ComplexValue {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut t_pow = Complex64::new(1.0, 0.0);
    for n in 0..=n_max {
        sum += eval_basis_phi(lambda, x, n) * t_pow;
        t_pow *= t / (n as f64 + 1.0);
    }
    g_normalizer(lambda, t) * sum
}

/// `(C, S) = (cos, sin)(2 x arcsinh(t/2))`, so `E = C + i S`.
pub fn c_and_s(x: ComplexValue, t: ComplexValue) -> Result<(ComplexValue, ComplexValue)> {
    check_branch(t)?;
    let a = 2.0 * x * arcsinh(t / 2.0);
    Ok((a.cos(), a.sin()))
}

// sin(phi) / sin(phi + i arcsinh(t/2))
fn sine_ratio(params: &MPParams, t: Complex64) -> Result<Complex64> {
    check_branch(t)?;
    let den = (params.phi() + I * arcsinh(t / 2.0)).sin();
    if den.norm() < 1e-300 {
        return Err(Error::ZeroDenominator(format!(
            "sin(phi + i arcsinh(t/2)) vanishes at t = {t}"
        )));
    }
    Ok(params.phi().sin() / den)
}

/// Ratio `g_{n+1} / g_n = (i t / (2 sin phi)) sin(phi) / sin(phi + i arcsinh(t/2))`.
pub fn coefficient_ratio(params: &MPParams, t: ComplexValue) -> Result<ComplexValue> {
    Ok(I * t / (2.0 * params.phi().sin()) * sine_ratio(params, t)?)
}

/// `g_n(t, lambda) = (i t / (2 sin phi))^n (sin phi / sin(phi + i arcsinh(t/2)))^{2 lambda + n}`.
pub fn expansion_coeff(params: &MPParams, t: ComplexValue, n: usize) -> Result<ComplexValue> {
    let r = sine_ratio(params, t)?;
    let g0 = cpow(r, Complex64::new(2.0 * params.lambda(), 0.0));
    let step = I * t / (2.0 * params.phi().sin()) * r;
    Ok(g0 * step.powu(n as u32))
}

/// Coefficients `g_0 .. g_N` at one `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoeffs {
    pub t: ComplexValue,
    pub lambda: f64,
    pub phi: f64,
    pub coeffs: Vec<ComplexValue>,
}

impl ExpansionCoeffs {
    pub fn new(params: &MPParams, t: ComplexValue, n_max: usize) -> Result<Self> {
        let coeffs = (0..=n_max)
            .map(|n| expansion_coeff(params, t, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            t,
            lambda: params.lambda(),
            phi: params.phi(),
            coeffs,
        })
    }
}

/// `sum_{n <= N} g_n(t, lambda) P_n(x)`.
pub fn plane_wave_partial(
    params: &MPParams,
    x: ComplexValue,
    t: ComplexValue,
    n_max: usize,
) -> Result<ComplexValue> {
    let polys = eval_recurrence(params, x, n_max)?;
    let coeffs = ExpansionCoeffs::new(params, t, n_max)?;
    Ok(coeffs
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, g)| g * polys.value(n))
        .sum())
}
