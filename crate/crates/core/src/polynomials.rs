//! Meixner-Pollaczek polynomials `P_n^(lambda)(x; phi)`.
//!
//! The forward three-term recurrence
//!
//! ```text
//! (n + 1) P_{n+1} = 2 [x sin(phi) + (n + lambda) cos(phi)] P_n - (n + 2 lambda - 1) P_{n-1}
//! ```
//!
//! is the production route. The terminating hypergeometric form and the
//! bilateral Pochhammer sum are kept as independent oracles; both cancel
//! badly on the real line and are summed in double-double arithmetic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundations::dd::{Dd, DdComplex};
use crate::foundations::{pochhammer, ComplexValue, I};

/// Largest degree the recurrence evaluators accept.
pub const MAX_DEGREE: usize = 500;

// rescale the running pair once magnitudes pass this
const RESCALE_THRESHOLD: f64 = 1e200;

/// Parameters `(lambda, phi)` of one Meixner-Pollaczek family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MPParams {
    lambda: f64,
    phi: f64,
}

impl MPParams {
    /// Requires `lambda > 0` and `0 < phi < pi`.
    pub fn new(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if !(phi.is_finite() && phi > 0.0 && phi < PI) {
            return Err(Error::InvalidParams(format!(
                "phi must lie in (0, pi), got {phi}"
            )));
        }
        Ok(Self { lambda, phi })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Same `phi`, `lambda` replaced by `lambda + delta`.
    pub fn with_lambda_shift(&self, delta: f64) -> Result<Self> {
        Self::new(self.lambda + delta, self.phi)
    }
}

/// Parameters of the generalized family `P_n^(lambda)(x; theta, psi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenMPParams {
    lambda: f64,
    theta: f64,
    psi: f64,
}

impl GenMPParams {
    pub fn new(lambda: f64, theta: f64, psi: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if !(theta.is_finite() && psi.is_finite()) {
            return Err(Error::InvalidParams("theta and psi must be finite".into()));
        }
        Ok(Self { lambda, theta, psi })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// Values of the members of degree `0..=degree_max` of a polynomial family
/// at one point.
///
/// The degree-`n` member is `values[n] * exp(log_scale[n])`. `log_scale`
/// stays zero unless the magnitudes approach overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence {
    pub point: ComplexValue,
    pub values: Vec<ComplexValue>,
    pub log_scale: Vec<f64>,
}

impl PolySequence {
    pub fn degree_max(&self) -> usize {
        self.values.len() - 1
    }

    /// The degree-`n` value (may overflow to infinity when rescaled).
    pub fn value(&self, n: usize) -> ComplexValue {
        let s = self.log_scale[n];
        if s == 0.0 {
            self.values[n]
        } else {
            self.values[n] * s.exp()
        }
    }

    pub fn ln_abs(&self, n: usize) -> f64 {
        self.values[n].norm().ln() + self.log_scale[n]
    }

    /// `self_n / other_n`, computed without forming either value.
    pub fn ratio(&self, other: &PolySequence, n: usize) -> ComplexValue {
        self.values[n] / other.values[n] * (self.log_scale[n] - other.log_scale[n]).exp()
    }

    /// All values, unscaled.
    pub fn to_vec(&self) -> Vec<ComplexValue> {
        (0..self.values.len()).map(|n| self.value(n)).collect()
    }
}

/// Runs the recurrence from arbitrary initial values. `lambda` is not
/// range-checked: the recurrence is a polynomial identity in `lambda`.
pub(crate) fn run_recurrence(
    lambda: f64,
    phi: f64,
    x: Complex64,
    y0: Complex64,
    y1: Complex64,
    n_max: usize,
) -> PolySequence {
    let (s, c) = phi.sin_cos();
    let mut values = Vec::with_capacity(n_max + 1);
    let mut log_scale = Vec::with_capacity(n_max + 1);
    values.push(y0);
    log_scale.push(0.0);
    if n_max == 0 {
        return PolySequence {
            point: x,
            values,
            log_scale,
        };
    }
    values.push(y1);
    log_scale.push(0.0);
    let mut prev = y0;
    let mut cur = y1;
    let mut scale = 0.0;
    for k in 1..n_max {
        let kf = k as f64;
        let next = (2.0 * (x * s + (kf + lambda) * c) * cur - (kf + 2.0 * lambda - 1.0) * prev)
            / (kf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.norm();
        if m > RESCALE_THRESHOLD {
            cur /= m;
            prev /= m;
            scale += m.ln();
        }
        values.push(cur);
        log_scale.push(scale);
    }
    PolySequence {
        point: x,
        values,
        log_scale,
    }
}

pub(crate) fn first_degree(lambda: f64, phi: f64, x: Complex64) -> Complex64 {
    2.0 * lambda * phi.cos() + 2.0 * x * phi.sin()
}

/// `P_0 .. P_N` at `x` by forward recurrence.
pub fn eval_recurrence(params: &MPParams, x: ComplexValue, n_max: usize) -> Result<PolySequence> {
    if n_max > MAX_DEGREE {
        return Err(Error::DegreeCap {
            requested: n_max,
            max: MAX_DEGREE,
        });
    }
    let (l, p) = (params.lambda, params.phi);
    Ok(run_recurrence(
        l,
        p,
        x,
        Complex64::new(1.0, 0.0),
        first_degree(l, p, x),
        n_max,
    ))
}

/// Single value `P_n(x)` by recurrence.
pub fn eval(params: &MPParams, x: ComplexValue, n: usize) -> Result<ComplexValue> {
    Ok(eval_recurrence(params, x, n)?.value(n))
}

/// `P_n` by recurrence for an unrestricted `lambda` (used for the
/// `1 - lambda` family and parameter shifts in identities).
pub(crate) fn eval_any_lambda(lambda: f64, phi: f64, x: Complex64, n: usize) -> Complex64 {
    run_recurrence(
        lambda,
        phi,
        x,
        Complex64::new(1.0, 0.0),
        first_degree(lambda, phi, x),
        n,
    )
    .value(n)
}

// lambda + i x as a double-double complex; exact for double inputs
fn lambda_plus_ix(lambda: f64, x: Complex64) -> DdComplex {
    DdComplex::new(Dd::new(lambda) - Dd::new(x.im), Dd::new(x.re))
}

fn lambda_minus_ix(lambda: f64, x: Complex64) -> DdComplex {
    DdComplex::new(Dd::new(lambda) + Dd::new(x.im), -Dd::new(x.re))
}

/// `(2 lambda)_n / n!` in double-double.
fn binomial_prefactor(lambda: f64, n: usize) -> Dd {
    let two_l = Dd::new(2.0 * lambda);
    (0..n).fold(Dd::ONE, |acc, k| {
        acc * (two_l + Dd::new(k as f64)) / Dd::new(k as f64 + 1.0)
    })
}

/// Terminating `2F1(-n, a; c; z)` summed with the Pochhammer term ratio.
fn terminating_2f1(n: usize, a: DdComplex, c: Dd, z: DdComplex) -> DdComplex {
    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    for k in 0..n {
        let kd = Dd::new(k as f64);
        let num = (a + DdComplex::new(kd, Dd::ZERO)).scale(Dd::new(k as f64 - n as f64));
        let den = (c + kd) * Dd::new(k as f64 + 1.0);
        term = (term * num * z).scale(Dd::ONE / den);
        sum = sum + term;
    }
    sum
}

/// `P_n(x)` from the hypergeometric representation.
pub fn eval_hyp(params: &MPParams, x: ComplexValue, n: usize) -> ComplexValue {
    let lambda = params.lambda;
    let z = DdComplex::ONE - DdComplex::cis(-2.0 * params.phi);
    let f = terminating_2f1(n, lambda_plus_ix(lambda, x), Dd::new(2.0 * lambda), z);
    let phase = DdComplex::cis(params.phi).powi(n);
    (phase * f)
        .scale(binomial_prefactor(lambda, n))
        .to_c64()
}

/// `P_n(x)` from the bilateral sum
/// `e^{i n phi} sum_k (lambda + ix)_k (lambda - ix)_{n-k} / (k! (n-k)!) e^{-2ik phi}`.
pub fn eval_sum(params: &MPParams, x: ComplexValue, n: usize) -> ComplexValue {
    let lambda = params.lambda;
    let a = lambda_plus_ix(lambda, x);
    let b = lambda_minus_ix(lambda, x);
    // A_k = (a)_k / k!, B_j = (b)_j / j!
    let mut ak = Vec::with_capacity(n + 1);
    let mut bk = Vec::with_capacity(n + 1);
    let (mut pa, mut pb) = (DdComplex::ONE, DdComplex::ONE);
    for k in 0..=n {
        ak.push(pa);
        bk.push(pb);
        let kd = DdComplex::real(k as f64);
        let inv = Dd::ONE / Dd::new(k as f64 + 1.0);
        pa = (pa * (a + kd)).scale(inv);
        pb = (pb * (b + kd)).scale(inv);
    }
    let rot = DdComplex::cis(-2.0 * params.phi);
    let mut rot_k = DdComplex::ONE;
    let mut sum = DdComplex::ZERO;
    for k in 0..=n {
        sum = sum + ak[k] * bk[n - k] * rot_k;
        rot_k = rot_k * rot;
    }
    (DdComplex::cis(params.phi).powi(n) * sum).to_c64()
}

/// Generalized polynomial
/// `(2 lambda)_n / n! e^{i n theta} 2F1(-n, lambda + ix; 2 lambda; 1 - e^{i(psi - theta)})`.
pub fn eval_generalized(params: &GenMPParams, x: ComplexValue, n: usize) -> ComplexValue {
    let lambda = params.lambda;
    let z = DdComplex::ONE - DdComplex::cis(params.psi) * DdComplex::cis(-params.theta);
    let f = terminating_2f1(n, lambda_plus_ix(lambda, x), Dd::new(2.0 * lambda), z);
    (DdComplex::cis(params.theta).powi(n) * f)
        .scale(binomial_prefactor(lambda, n))
        .to_c64()
}

/// `phi_n^(lambda)(x) = (lambda + (1 - n)/2 + ix)_n`, the T-calculus analogue
/// of `x^n`.
pub fn eval_basis_phi(lambda: f64, x: ComplexValue, n: usize) -> ComplexValue {
    pochhammer(lambda + (1.0 - n as f64) / 2.0 + I * x, n)
}

/// Coefficient of `x^n` in `P_n`: `(2 sin phi)^n / n!`.
pub fn leading_coefficient(params: &MPParams, n: usize) -> f64 {
    let s2 = 2.0 * params.phi.sin();
    (0..n).fold(1.0, |acc, k| acc * s2 / (k as f64 + 1.0))
}

/// Numerator polynomials: same recurrence, `P*_0 = 0`, `P*_1 = 2 sin phi`.
pub fn numerator_recurrence(
    params: &MPParams,
    x: ComplexValue,
    n_max: usize,
) -> Result<PolySequence> {
    if n_max > MAX_DEGREE {
        return Err(Error::DegreeCap {
            requested: n_max,
            max: MAX_DEGREE,
        });
    }
    Ok(run_recurrence(
        params.lambda,
        params.phi,
        x,
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0 * params.phi.sin(), 0.0),
        n_max,
    ))
}

/// Numerator polynomial as the convolution
/// `2 sin phi sum_{k<n} P_k^(lambda)(x) P_{n-k-1}^(1-lambda)(-x) / (n - k)`.
pub fn numerator_explicit(params: &MPParams, x: ComplexValue, n: usize) -> ComplexValue {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let (l, p) = (params.lambda, params.phi);
    let direct = run_recurrence(l, p, x, Complex64::new(1.0, 0.0), first_degree(l, p, x), n - 1);
    let reflected = run_recurrence(
        1.0 - l,
        p,
        -x,
        Complex64::new(1.0, 0.0),
        first_degree(1.0 - l, p, -x),
        n - 1,
    );
    let sum: Complex64 = (0..n)
        .map(|k| direct.value(k) * reflected.value(n - k - 1) / (n - k) as f64)
        .sum();
    2.0 * p.sin() * sum
}

/// Both sides of the connection relation
/// `(lambda^2 + x^2) P_n^(lambda+1) = (n+2)(n+1)/(2 sin phi)^2 [P_{n+2} - ... ]`.
pub fn connection_lhs_rhs(
    params: &MPParams,
    x: ComplexValue,
    n: usize,
) -> (ComplexValue, ComplexValue) {
    let (l, p) = (params.lambda, params.phi);
    let nf = n as f64;
    let lhs = (l * l + x * x) * eval_any_lambda(l + 1.0, p, x, n);
    let seq = run_recurrence(l, p, x, Complex64::new(1.0, 0.0), first_degree(l, p, x), n + 2);
    let bracket = seq.value(n + 2) - 2.0 * (2.0 * l + nf + 1.0) * p.cos() / (nf + 2.0) * seq.value(n + 1)
        + (2.0 * l + nf) * (2.0 * l + nf + 1.0) / ((nf + 2.0) * (nf + 1.0)) * seq.value(n);
    let s2 = 2.0 * p.sin();
    let rhs = (nf + 2.0) * (nf + 1.0) / (s2 * s2) * bracket;
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::rel_err;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(l: f64, p: f64) -> MPParams {
        MPParams::new(l, p).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(MPParams::new(0.0, 1.0).is_err());
        assert!(MPParams::new(1.0, 0.0).is_err());
        assert!(MPParams::new(1.0, PI).is_err());
        assert!(MPParams::new(f64::NAN, 1.0).is_err());
        assert!(MPParams::new(0.1, 3.0).is_ok());
    }

    #[test]
    fn degree_zero_is_one() {
        let p = params(1.7, 0.4);
        for route in [
            eval_recurrence(&p, c(3.2, 0.0), 0).unwrap().value(0),
            eval_hyp(&p, c(3.2, 0.0), 0),
            eval_sum(&p, c(3.2, 0.0), 0),
        ] {
            assert_eq!(route, c(1.0, 0.0));
        }
    }

    #[test]
    fn degree_one_at_phi_half_pi() {
        let p = params(1.0, FRAC_PI_2);
        let v = eval(&p, c(0.0, 0.0), 1).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn special_point_value() {
        // P_2(i lambda) = (2 lambda)_2 e^{2 i phi} / 2! = 3 e^{2 i pi/3}
        let p = params(1.0, FRAC_PI_3);
        let v = eval(&p, c(0.0, 1.0), 2).unwrap();
        let expected = 3.0 * (2.0 * I * FRAC_PI_3).exp();
        assert!((v - expected).norm() < 1e-14);
    }

    #[test]
    fn sum_form_degree_one() {
        let p = params(0.8, 1.1);
        let x = c(0.37, 0.0);
        let expected = 2.0 * 0.8 * 1.1f64.cos() + 2.0 * x * 1.1f64.sin();
        assert!((eval_sum(&p, x, 1) - expected).norm() < 1e-15);
        assert!((eval_hyp(&p, x, 1) - expected).norm() < 1e-15);
    }

    #[test]
    fn routes_agree_for_large_real_x() {
        // this point cancels to roughly zero digits in plain double arithmetic
        let p = params(0.5, FRAC_PI_4);
        let x = c(9.7, 0.0);
        let rec = eval(&p, x, 30).unwrap();
        assert!(rel_err(eval_hyp(&p, x, 30), rec) < 1e-12);
        assert!(rel_err(eval_sum(&p, x, 30), rec) < 1e-12);
    }

    #[test]
    fn leading_coefficient_by_large_argument() {
        let p = params(1.3, 2.0);
        let r = 1e6;
        for n in [1, 3, 7] {
            let v = eval_hyp(&p, c(r, 0.0), n);
            let ratio = v.re / r.powi(n as i32);
            let lc = leading_coefficient(&p, n);
            assert!((ratio - lc).abs() <= 1e-4 * lc.abs(), "n = {n}");
        }
    }

    #[test]
    fn generalized_reduces_to_standard() {
        let (l, phi) = (1.4, 0.9);
        let g = GenMPParams::new(l, phi, -phi).unwrap();
        let p = params(l, phi);
        for n in [0, 1, 5, 12] {
            let x = c(-1.3, 0.0);
            assert!(rel_err(eval_generalized(&g, x, n), eval(&p, x, n).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn generalized_generating_function() {
        let (l, theta, psi) = (0.9, 0.7, -1.1);
        let g = GenMPParams::new(l, theta, psi).unwrap();
        let x = c(0.4, 0.0);
        let t: f64 = 0.2;
        let partial: Complex64 = (0..=60)
            .map(|n| eval_generalized(&g, x, n) * t.powi(n as i32))
            .sum();
        let closed = crate::foundations::cpow(1.0 - t * (I * theta).exp(), -(l - I * x))
            * crate::foundations::cpow(1.0 - t * (I * psi).exp(), -(l + I * x));
        assert!((partial - closed).norm() <= 1e-9);
    }

    #[test]
    fn basis_phi_examples() {
        assert_eq!(eval_basis_phi(2.0, c(0.3, 0.0), 0), c(1.0, 0.0));
        let x = c(0.3, -0.2);
        assert!((eval_basis_phi(2.0, x, 1) - (2.0 + I * x)).norm() < 1e-15);
        assert!((eval_basis_phi(1.0, c(0.0, 0.0), 2) - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn numerator_initial_values() {
        let p = params(1.2, 0.8);
        let x = c(0.5, 0.0);
        let seq = numerator_recurrence(&p, x, 2).unwrap();
        assert_eq!(seq.value(0), c(0.0, 0.0));
        assert!((seq.value(1) - 2.0 * 0.8f64.sin()).norm() < 1e-15);
        // one step: 2 P*_2 = 2 [x sin + (1 + lambda) cos] P*_1
        let step = (x * 0.8f64.sin() + 2.2 * 0.8f64.cos()) * 2.0 * 0.8f64.sin();
        assert!((seq.value(2) - step).norm() < 1e-14);
        assert_eq!(numerator_explicit(&p, x, 0), c(0.0, 0.0));
        assert!((numerator_explicit(&p, x, 1) - 2.0 * 0.8f64.sin()).norm() < 1e-15);
    }

    #[test]
    fn numerator_routes_agree() {
        let p = params(0.7, 2.0);
        let x = c(-2.1, 0.0);
        let seq = numerator_recurrence(&p, x, 20).unwrap();
        for n in 0..=20 {
            let e = numerator_explicit(&p, x, n);
            assert!((e - seq.value(n)).norm() <= 1e-9 * seq.value(n).norm().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn connection_relation_vanishes_at_i_lambda() {
        let p = params(1.5, 1.0);
        let (lhs, rhs) = connection_lhs_rhs(&p, c(0.0, 1.5), 4);
        assert!(lhs.norm() < 1e-12);
        assert!(rhs.norm() < 1e-10);
    }

    #[test]
    fn connection_relation_holds() {
        let p = params(1.3, 0.9);
        for n in 0..=15 {
            let (lhs, rhs) = connection_lhs_rhs(&p, c(0.37, 0.0), n);
            assert!(rel_err(lhs, rhs) < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn rescaling_keeps_ratios() {
        // lambda = 300 grows past the rescale threshold well before degree 500
        let p = params(300.0, 0.3);
        let seq = eval_recurrence(&p, c(0.5, 0.0), 500).unwrap();
        assert!(seq.log_scale[500] > 0.0);
        assert!(seq.ln_abs(500).is_finite());
        assert!(eval_recurrence(&p, c(0.5, 0.0), 501).is_err());
    }
}
