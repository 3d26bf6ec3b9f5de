//! General solutions of the three-term recurrence, their generating
//! function, and large-degree (Darboux) asymptotics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundations::{cpow, log_gamma, ComplexValue, I};
use crate::polynomials::{eval_recurrence, run_recurrence, MPParams, MAX_DEGREE};
use crate::quadrature::GaussLegendre;

/// `y_0 .. y_N` for arbitrary initial values.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionSolution {
    pub params: MPParams,
    pub x: ComplexValue,
    pub y0: ComplexValue,
    pub y1: ComplexValue,
    pub values: Vec<ComplexValue>,
}

impl RecursionSolution {
    /// Largest relative residual of the recurrence over consecutive triples.
    pub fn max_triple_residual(&self) -> f64 {
        let (l, phi) = (self.params.lambda(), self.params.phi());
        let (s, c) = phi.sin_cos();
        let y = &self.values;
        (1..y.len().saturating_sub(1))
            .map(|n| {
                let nf = n as f64;
                let a = (nf + 1.0) * y[n + 1];
                let b = 2.0 * (self.x * s + (nf + l) * c) * y[n];
                let d = (nf + 2.0 * l - 1.0) * y[n - 1];
                let scale = a.norm().max(b.norm()).max(d.norm());
                if scale == 0.0 {
                    0.0
                } else {
                    (a - b + d).norm() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}

pub fn general_solution(
    params: &MPParams,
    x: ComplexValue,
    y0: ComplexValue,
    y1: ComplexValue,
    n_max: usize,
) -> Result<RecursionSolution> {
    if n_max < 1 {
        return Err(Error::InvalidParams("need N >= 1".into()));
    }
    if n_max > MAX_DEGREE {
        return Err(Error::DegreeCap {
            requested: n_max,
            max: MAX_DEGREE,
        });
    }
    let seq = run_recurrence(params.lambda(), params.phi(), x, y0, y1, n_max);
    Ok(RecursionSolution {
        params: *params,
        x,
        y0,
        y1,
        values: seq.to_vec(),
    })
}

/// Both sides of the generating-function identity
/// `(1 - t e^{i phi})^{lambda - ix} (1 - t e^{-i phi})^{lambda + ix} sum y_n t^n
///   = y_0 + c integral_0^t (1 - u e^{i phi})^{lambda - ix - 1} (1 - u e^{-i phi})^{lambda + ix - 1} du`
/// with `c = y_1 - 2 x sin(phi) y_0 - 2 lambda cos(phi) y_0`.
pub fn gf_identity_check(
    params: &MPParams,
    x: ComplexValue,
    y0: ComplexValue,
    y1: ComplexValue,
    t: ComplexValue,
    n_max: usize,
) -> Result<(ComplexValue, ComplexValue)> {
    if t.norm() > 0.3 {
        return Err(Error::InvalidParams(format!("need |t| <= 0.3, got {}", t.norm())));
    }
    let (l, phi) = (params.lambda(), params.phi());
    let (ep, em) = ((I * phi).exp(), (-I * phi).exp());
    let a = l - I * x;
    let b = l + I * x;
    let sol = general_solution(params, x, y0, y1, n_max.max(1))?;
    let mut series = Complex64::new(0.0, 0.0);
    let mut tp = Complex64::new(1.0, 0.0);
    for y in sol.values.iter().take(n_max + 1) {
        series += y * tp;
        tp *= t;
    }
    let lhs = cpow(1.0 - t * ep, a) * cpow(1.0 - t * em, b) * series;
    let c = y1 - 2.0 * x * phi.sin() * y0 - 2.0 * l * phi.cos() * y0;
    let rule = GaussLegendre::new(64);
    let integral = rule.integrate_segment(
        |u| cpow(1.0 - u * ep, a - 1.0) * cpow(1.0 - u * em, b - 1.0),
        Complex64::new(0.0, 0.0),
        t,
    );
    Ok((lhs, y0 + c * integral))
}

// ln((a)_n / n!), or None when the factor vanishes
fn ln_rising_over_factorial(a: Complex64, n: usize) -> Option<Complex64> {
    let top = log_gamma(a + n as f64);
    let bottom = log_gamma(a);
    match (top, bottom) {
        (Ok(t), Ok(b)) => Some(t - b - log_gamma(Complex64::new(n as f64 + 1.0, 0.0)).unwrap()),
        // a is a non-positive integer and the product reaches zero
        (Ok(_), Err(_)) => None,
        // both poles: (a)_n is a finite product, fall back to direct
        _ => {
            let p = crate::foundations::pochhammer(a, n);
            if p.norm() == 0.0 {
                None
            } else {
                let f: f64 = (1..=n).map(|j| (j as f64).ln()).sum();
                Some(p.ln() - f)
            }
        }
    }
}

/// Logs of the two terms of the comparison function:
/// `(lambda + ix)_n / n! e^{-in phi} (1 - e^{2i phi})^{-lambda + ix}` and
/// `(lambda - ix)_n / n! e^{in phi} (1 - e^{-2i phi})^{-lambda - ix}`.
pub fn darboux_log_terms(params: &MPParams, x: ComplexValue, n: usize) -> (Option<Complex64>, Option<Complex64>) {
    let (l, phi) = (params.lambda(), params.phi());
    let nf = n as f64;
    let t1 = ln_rising_over_factorial(l + I * x, n).map(|r| {
        r - I * nf * phi + (-l + I * x) * (1.0 - (2.0 * I * phi).exp()).ln()
    });
    let t2 = ln_rising_over_factorial(l - I * x, n).map(|r| {
        r + I * nf * phi + (-l - I * x) * (1.0 - (-2.0 * I * phi).exp()).ln()
    });
    (t1, t2)
}

/// Two-term large-`n` comparison value for `P_n(x)`.
pub fn darboux_p(params: &MPParams, x: ComplexValue, n: usize) -> ComplexValue {
    let (t1, t2) = darboux_log_terms(params, x, n);
    t1.map_or(Complex64::new(0.0, 0.0), |t| t.exp()) + t2.map_or(Complex64::new(0.0, 0.0), |t| t.exp())
}

/// Log of the single dominant term for `Im x > 0`:
/// `n^{lambda - ix - 1} / Gamma(lambda - ix) e^{in phi} (1 - e^{-2i phi})^{-lambda - ix}`.
pub fn darboux_dominant_log(params: &MPParams, x: ComplexValue, n: usize) -> Result<ComplexValue> {
    if n == 0 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let (l, phi) = (params.lambda(), params.phi());
    let a = l - I * x;
    Ok((a - 1.0) * (n as f64).ln() - log_gamma(a)? + I * n as f64 * phi
        + (-l - I * x) * (1.0 - (-2.0 * I * phi).exp()).ln())
}

pub fn darboux_dominant(params: &MPParams, x: ComplexValue, n: usize) -> Result<ComplexValue> {
    Ok(darboux_dominant_log(params, x, n)?.exp())
}

/// Envelope-relative deviation of `P_m` from the two-term form, maximised
/// over `m` in `[n, n + window)`. On the real line the two terms are
/// conjugate-size oscillations, so the error is measured against
/// `|term 1| + |term 2|` rather than against their (possibly small) sum.
pub fn darboux_deviation(params: &MPParams, x: ComplexValue, n: usize, window: usize) -> Result<f64> {
    let top = n + window.max(1) - 1;
    let seq = eval_recurrence(params, x, top)?;
    let mut worst: f64 = 0.0;
    for m in n..=top {
        let (t1, t2) = darboux_log_terms(params, x, m);
        let shift = [t1, t2]
            .iter()
            .flatten()
            .map(|t| t.re)
            .fold(f64::NEG_INFINITY, f64::max);
        if !shift.is_finite() {
            continue;
        }
        let scaled = |t: Option<Complex64>| t.map_or(Complex64::new(0.0, 0.0), |t| (t - shift).exp());
        let (a, b) = (scaled(t1), scaled(t2));
        let p = seq.values[m] * (seq.log_scale[m] - shift).exp();
        worst = worst.max((p - a - b).norm() / (a.norm() + b.norm()));
    }
    Ok(worst)
}

/// `|P_n(x) / dominant - 1|` for `Im x > 0`.
pub fn dominant_deviation(params: &MPParams, x: ComplexValue, n: usize) -> Result<f64> {
    if !(x.im > 0.0) {
        return Err(Error::InvalidParams("the dominant form needs Im x > 0".into()));
    }
    let seq = eval_recurrence(params, x, n)?;
    let ln_p = seq.values[n].ln() + seq.log_scale[n];
    Ok(((ln_p - darboux_dominant_log(params, x, n)?).exp() - 1.0).norm())
}

/// `ln h_n`, `h_n = 2 pi Gamma(n + 2 lambda) / ((2 sin phi)^{2 lambda} n!)`.
fn ln_norm(params: &MPParams, n: usize) -> f64 {
    let l = params.lambda();
    (2.0 * PI).ln() + log_gamma(Complex64::new(n as f64 + 2.0 * l, 0.0)).unwrap().re
        - 2.0 * l * (2.0 * params.phi().sin()).ln()
        - log_gamma(Complex64::new(n as f64 + 1.0, 0.0)).unwrap().re
}

/// Partial sums `S_k = sum_{n <= k} |p_n(x)|^2`, `p_n = P_n / sqrt(h_n)`, for `k = 0 ..= N`.
pub fn l2_partial_sums(params: &MPParams, x: f64, n_max: usize) -> Result<Vec<f64>> {
    let seq = eval_recurrence(params, Complex64::new(x, 0.0), n_max)?;
    let mut sums = Vec::with_capacity(n_max + 1);
    let mut s = 0.0;
    for n in 0..=n_max {
        s += (2.0 * seq.ln_abs(n) - ln_norm(params, n)).exp();
        sums.push(s);
    }
    Ok(sums)
}

/// `S_N = sum_{n <= N} |p_n(x)|^2`.
pub fn l2_divergence_witness(params: &MPParams, x: f64, n_max: usize) -> Result<f64> {
    Ok(*l2_partial_sums(params, x, n_max)?.last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::rel_err;
    use crate::polynomials::{eval, numerator_recurrence};
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reproduces_both_families() {
        let p = MPParams::new(1.4, 0.7).unwrap();
        let x = c(0.9, 0.0);
        let p1 = eval(&p, x, 1).unwrap();
        let sol = general_solution(&p, x, c(1.0, 0.0), p1, 15).unwrap();
        assert!(rel_err(sol.values[15], eval(&p, x, 15).unwrap()) < 1e-14);
        assert!(sol.max_triple_residual() < 1e-12);
        let num = general_solution(&p, x, c(0.0, 0.0), c(2.0 * 0.7f64.sin(), 0.0), 15).unwrap();
        let direct = numerator_recurrence(&p, x, 15).unwrap();
        assert_eq!(num.values, direct.to_vec());
        assert!(general_solution(&p, x, c(1.0, 0.0), p1, 0).is_err());
    }

    #[test]
    fn superposition() {
        let p = MPParams::new(0.6, 2.0).unwrap();
        let x = c(-0.3, 0.2);
        let a = general_solution(&p, x, c(1.0, 0.5), c(-0.2, 1.0), 20).unwrap();
        let b = general_solution(&p, x, c(0.3, 0.0), c(2.0, -1.0), 20).unwrap();
        let (al, be) = (c(0.7, -0.1), c(-1.2, 0.4));
        let s = general_solution(&p, x, al * a.y0 + be * b.y0, al * a.y1 + be * b.y1, 20).unwrap();
        for n in 0..=20 {
            let combo = al * a.values[n] + be * b.values[n];
            assert!((s.values[n] - combo).norm() <= 1e-12 * combo.norm().max(1.0));
        }
    }

    #[test]
    fn generating_function() {
        let p = MPParams::new(1.3, 1.1).unwrap();
        let x = c(0.45, 0.0);
        let (l, r) = gf_identity_check(&p, x, c(0.7, 0.0), c(-1.1, 0.2), c(0.0, 0.0), 10).unwrap();
        assert_eq!(l, c(0.7, 0.0));
        assert!((r - c(0.7, 0.0)).norm() < 1e-15);
        let (l, r) = gf_identity_check(&p, x, c(0.7, 0.3), c(-1.1, 0.2), c(0.2, 0.0), 80).unwrap();
        assert!((l - r).norm() < 1e-8);
        let (l, r) = gf_identity_check(&p, x, c(0.0, 0.0), c(2.0 * 1.1f64.sin(), 0.0), c(0.0, 0.2), 80)
            .unwrap();
        assert!((l - r).norm() < 1e-8);
        assert!(gf_identity_check(&p, x, c(1.0, 0.0), c(0.0, 0.0), c(0.4, 0.0), 80).is_err());
    }

    #[test]
    fn darboux_real_axis_trend() {
        let p = MPParams::new(1.0, FRAC_PI_2).unwrap();
        let x = c(0.7, 0.0);
        let d: Vec<f64> = [100, 200, 400]
            .iter()
            .map(|&n| darboux_deviation(&p, x, n, 8).unwrap())
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
        assert!(d[0] <= 5e-2);
    }

    #[test]
    fn darboux_upper_half_plane_trend() {
        let p = MPParams::new(1.0, FRAC_PI_2).unwrap();
        let x = c(0.5, 0.5);
        let d: Vec<f64> = [100, 200, 400]
            .iter()
            .map(|&n| dominant_deviation(&p, x, n).unwrap())
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
        assert!(d[2] <= 5e-2);
    }

    #[test]
    fn l2_sums_increase() {
        let p = MPParams::new(1.0, FRAC_PI_2).unwrap();
        let s = l2_partial_sums(&p, 0.0, 50).unwrap();
        assert!((s[0] - 1.0 / crate::quadrature_weight::squared_norm(&p, 0)).abs() < 1e-15);
        assert!(s.windows(2).all(|w| w[1] >= w[0]));
    }
}
