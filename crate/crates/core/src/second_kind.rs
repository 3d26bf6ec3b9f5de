//! Functions of the second kind
//! `Q_n(z) = (1 / omega(z)) integral P_n(t) omega(t) / (z - t) dt` and the
//! Stieltjes transform of the normalized weight.
//!
//! Most routines work with the weighted Cauchy integral
//! `C_n(z) = omega(z) Q_n(z)`, which stays finite where `omega` has poles
//! (`Q_n` vanishes there).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundations::{log_gamma, ComplexValue, I};
use crate::polynomials::{eval_recurrence, numerator_recurrence, MPParams};
use crate::quadrature::integrate_refined;
use crate::quadrature_weight::{
    normalized_weight, recip_weight_analytic, QuadratureScheme, WeightedRule,
};
use crate::t_calculus::central_difference_power;

/// Smallest `|Im z|` accepted by the Cauchy-integral routes.
pub const AXIS_GUARD: f64 = 0.25;

/// Largest degree generated by the forward recurrence for `Q_n`.
pub const Q_RECURRENCE_MAX: usize = 8;

/// Decimal digits the recurrence may lose before it is flagged.
pub const INSTABILITY_DIGITS: f64 = 8.0;

/// Quadrature along `u = e^{-i phi} s`, `s` in `[0, 1]`, with the endpoint
/// substitution `1 - s = w^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// `m`; chosen from the endpoint exponent when `None`.
    pub substitution_power: Option<u32>,
    pub panels: usize,
    pub nodes: usize,
    pub tol: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            substitution_power: None,
            panels: 16,
            nodes: 32,
            tol: 1e-12,
        }
    }
}

impl ContourSpec {
    /// `m` with `m (lambda + Im z) >= 12`, which makes the transformed
    /// integrand vanish to high order at `w = 0`.
    pub fn power_for(&self, lambda: f64, z: Complex64) -> u32 {
        self.substitution_power
            .unwrap_or_else(|| (12.0 / (lambda + z.im)).ceil().max(1.0) as u32)
    }
}

/// `Q_0 .. Q_N` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondKindEval {
    pub params: MPParams,
    pub z: ComplexValue,
    pub n_max: usize,
    pub values: Vec<ComplexValue>,
    /// Largest cancellation seen in one recurrence step, in decimal digits.
    pub digits_lost: f64,
    pub unstable: bool,
}

fn guard(z: Complex64, required: f64) -> Result<()> {
    if z.im.abs() < required {
        return Err(Error::NearAxis {
            re: z.re,
            im: z.im,
            guard: required,
        });
    }
    Ok(())
}

fn cauchy_scheme(params: &MPParams, z: Complex64, degree: usize, scheme: &QuadratureScheme) -> QuadratureScheme {
    let auto = QuadratureScheme::for_weight(params, degree, scheme.tol);
    scheme
        .widened_to(auto.half_width)
        .with_max_panel_width((2.0 * params.lambda()).min(2.0 * z.im.abs()))
}

/// `C_n(z) = integral P_n(t) omega(t) / (z - t) dt` for `n = 0 ..= n_max`.
pub fn cauchy_integrals(
    params: &MPParams,
    z: ComplexValue,
    n_max: usize,
    scheme: &QuadratureScheme,
) -> Result<Vec<ComplexValue>> {
    guard(z, AXIS_GUARD)?;
    let sch = cauchy_scheme(params, z, n_max, scheme);
    let rule = WeightedRule::new(params, &sch)?;
    let at = |t: f64| -> Vec<Complex64> {
        let tc = Complex64::new(t, 0.0);
        let polys = eval_recurrence(params, tc, n_max).expect("degree within cap");
        let k = 1.0 / (z - t);
        (0..=n_max).map(|n| polys.value(n) * k).collect()
    };
    let coarse: Vec<Vec<Complex64>> = rule.coarse_nodes().map(at).collect();
    let fine: Vec<Vec<Complex64>> = rule.fine_nodes().map(at).collect();
    (0..=n_max)
        .map(|n| {
            let cv: Vec<_> = coarse.iter().map(|v| v[n]).collect();
            let fv: Vec<_> = fine.iter().map(|v| v[n]).collect();
            rule.combine(&cv, &fv).map(|e| e.value)
        })
        .collect()
}

/// `C_n(z) = omega(z) Q_n(z)`.
pub fn cauchy_integral(
    params: &MPParams,
    z: ComplexValue,
    n: usize,
    scheme: &QuadratureScheme,
) -> Result<ComplexValue> {
    Ok(cauchy_integrals(params, z, n, scheme)?[n])
}

/// `Q_n(z)` from its Cauchy-integral definition.
pub fn q_integral(
    params: &MPParams,
    z: ComplexValue,
    n: usize,
    scheme: &QuadratureScheme,
) -> Result<ComplexValue> {
    let c = cauchy_integral(params, z, n, scheme)?;
    Ok(c * recip_weight_analytic(params.lambda(), params.phi(), z))
}

/// `z C_0(z)`, which tends to the total mass `2 pi Gamma(2 lambda) / (2 sin phi)^{2 lambda}`.
pub fn mass_limit(params: &MPParams, z: ComplexValue, scheme: &QuadratureScheme) -> Result<ComplexValue> {
    Ok(z * cauchy_integral(params, z, 0, scheme)?)
}

/// `integral_0^{e^{-i phi}} (1 - u e^{i phi})^{lambda - iz - 1} (1 - u e^{-i phi})^{lambda + iz - 1} du`
/// for `Im z > 0`.
pub fn contour_integral(params: &MPParams, z: ComplexValue, contour: &ContourSpec) -> Result<ComplexValue> {
    if !(z.im > 0.0) {
        return Err(Error::InvalidParams(
            "the contour form needs Im z > 0".into(),
        ));
    }
    let (l, phi) = (params.lambda(), params.phi());
    let m = contour.power_for(l, z) as f64;
    let a = l - I * z;
    let b = l + I * z - 1.0;
    let rot = (-2.0 * I * phi).exp();
    let front = (-I * phi).exp() * m;
    let integrand = |w: f64| -> Complex64 {
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let wm = w.powf(m);
        let s = 1.0 - wm;
        let lnw = w.ln();
        front * ((m * a - 1.0) * lnw).exp() * (b * (1.0 - s * rot).ln()).exp()
    };
    integrate_refined(integrand, 0.0, 1.0, contour.panels, contour.nodes, contour.tol).map(|e| e.value)
}

/// Stieltjes transform `F(z) = integral W(t) / (z - t) dt` of the normalized
/// weight, through the contour form; the lower half-plane by reflection.
pub fn stieltjes_transform(params: &MPParams, z: ComplexValue, contour: &ContourSpec) -> Result<ComplexValue> {
    if z.im == 0.0 {
        return Err(Error::NearAxis {
            re: z.re,
            im: 0.0,
            guard: 0.0,
        });
    }
    if z.im < 0.0 {
        return Ok(stieltjes_transform(params, z.conj(), contour)?.conj());
    }
    Ok(2.0 * params.phi().sin() * contour_integral(params, z, contour)?)
}

/// `Q_0(z) = 2 pi Gamma(2 lambda) / ((2 sin phi)^{2 lambda - 1} omega(z)) * contour integral`.
pub fn q0_closed(params: &MPParams, z: ComplexValue, contour: &ContourSpec) -> Result<ComplexValue> {
    if z.im < 0.0 {
        return Ok(q0_closed(params, z.conj(), contour)?.conj());
    }
    let (l, phi) = (params.lambda(), params.phi());
    let pre = (2.0 * PI).ln() + log_gamma(Complex64::new(2.0 * l, 0.0))?.re
        - (2.0 * l - 1.0) * (2.0 * phi.sin()).ln();
    Ok(pre.exp() * contour_integral(params, z, contour)? * recip_weight_analytic(l, phi, z))
}

/// `Q_0 .. Q_N` by the three-term recurrence seeded with the Cauchy
/// integrals for `n = 0, 1`.
pub fn q_recurrence(
    params: &MPParams,
    z: ComplexValue,
    n_max: usize,
    scheme: &QuadratureScheme,
) -> Result<SecondKindEval> {
    if n_max > Q_RECURRENCE_MAX {
        return Err(Error::DegreeCap {
            requested: n_max,
            max: Q_RECURRENCE_MAX,
        });
    }
    let (l, phi) = (params.lambda(), params.phi());
    let seeds = cauchy_integrals(params, z, n_max.min(1), scheme)?;
    let recip = recip_weight_analytic(l, phi, z);
    let mut values: Vec<Complex64> = seeds.iter().map(|c| c * recip).collect();
    let (s, c) = phi.sin_cos();
    let mut digits_lost: f64 = 0.0;
    for k in 1..n_max {
        let kf = k as f64;
        let a = 2.0 * (z * s + (kf + l) * c) * values[k];
        let b = (kf + 2.0 * l - 1.0) * values[k - 1];
        let next = a - b;
        let scale = a.norm() + b.norm();
        if next.norm() > 0.0 && scale > 0.0 {
            digits_lost = digits_lost.max((scale / next.norm()).log10());
        }
        values.push(next / (kf + 1.0));
    }
    Ok(SecondKindEval {
        params: *params,
        z,
        n_max,
        values,
        digits_lost,
        unstable: digits_lost > INSTABILITY_DIGITS,
    })
}

/// `(T Q_n^(lambda)(z), 2 sin phi Q_{n-1}^(lambda+1/2)(z))`, `n >= 1`.
pub fn lowering_q(
    params: &MPParams,
    z: ComplexValue,
    n: usize,
    scheme: &QuadratureScheme,
) -> Result<(ComplexValue, ComplexValue)> {
    if n == 0 {
        return Err(Error::InvalidParams("lowering needs n >= 1".into()));
    }
    guard(z, AXIS_GUARD + 0.5)?;
    let up = q_integral(params, z + 0.5 * I, n, scheme)?;
    let down = q_integral(params, z - 0.5 * I, n, scheme)?;
    let shifted = params.with_lambda_shift(0.5)?;
    let rhs = 2.0 * params.phi().sin() * q_integral(&shifted, z, n - 1, scheme)?;
    Ok(((up - down) / I, rhs))
}

/// `(T[omega_lambda Q_n^(lambda)](z), -(n+1) omega_{lambda-1/2}(z) Q_{n+1}^(lambda-1/2)(z))`,
/// both sides through the weighted Cauchy integrals. Needs `lambda > 1/2`.
pub fn raising_q(
    params: &MPParams,
    z: ComplexValue,
    n: usize,
    scheme: &QuadratureScheme,
) -> Result<(ComplexValue, ComplexValue)> {
    if params.lambda() <= 0.5 {
        return Err(Error::InvalidParams(format!(
            "raising needs lambda > 1/2, got {}",
            params.lambda()
        )));
    }
    guard(z, AXIS_GUARD + 0.5)?;
    let up = cauchy_integral(params, z + 0.5 * I, n, scheme)?;
    let down = cauchy_integral(params, z - 0.5 * I, n, scheme)?;
    let lowered = params.with_lambda_shift(-0.5)?;
    let rhs = -((n + 1) as f64) * cauchy_integral(&lowered, z, n + 1, scheme)?;
    Ok(((up - down) / I, rhs))
}

/// Both relations at once; `n >= 1` and `lambda > 1/2`.
pub fn lowering_raising_q(
    params: &MPParams,
    z: ComplexValue,
    n: usize,
    scheme: &QuadratureScheme,
) -> Result<((ComplexValue, ComplexValue), (ComplexValue, ComplexValue))> {
    Ok((
        lowering_q(params, z, n, scheme)?,
        raising_q(params, z, n, scheme)?,
    ))
}

/// `(omega Q_n(z), (-1)^n / n! T^n[omega_{lambda+n/2} Q_0^(lambda+n/2)](z))`.
pub fn rodrigues_check(
    params: &MPParams,
    z: ComplexValue,
    n: usize,
    scheme: &QuadratureScheme,
) -> Result<(ComplexValue, ComplexValue)> {
    guard(z, AXIS_GUARD + n as f64 / 2.0)?;
    let lhs = cauchy_integral(params, z, n, scheme)?;
    let shifted = params.with_lambda_shift(n as f64 / 2.0)?;
    // each shifted point stays at least AXIS_GUARD from the axis
    let mut failure = None;
    let t_n = central_difference_power(
        |w| match cauchy_integral(&shifted, w, 0, scheme) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, f64::NAN)
            }
        },
        z,
        n,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let fact: f64 = (1..=n).map(|j| j as f64).product();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok((lhs, sign / fact * t_n))
}

/// `(P*_n(x) / P_n(x), F(x))` for `Im x > 0`.
pub fn stieltjes_ratio_check(
    params: &MPParams,
    x: ComplexValue,
    n: usize,
    contour: &ContourSpec,
) -> Result<(ComplexValue, ComplexValue)> {
    if !(x.im > 0.0) {
        return Err(Error::InvalidParams("need Im x > 0".into()));
    }
    let p = eval_recurrence(params, x, n)?;
    let q = numerator_recurrence(params, x, n)?;
    Ok((q.ratio(&p, n), stieltjes_transform(params, x, contour)?))
}

/// `((F(x - i eps) - F(x + i eps)) / (2 pi i), W(x))`.
pub fn inversion_weight_check(
    params: &MPParams,
    x: f64,
    eps: f64,
    contour: &ContourSpec,
) -> Result<(f64, f64)> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::InvalidParams(format!("eps must lie in (0, 0.1], got {eps}")));
    }
    let z = Complex64::new(x, eps);
    let above = stieltjes_transform(params, z, contour)?;
    let below = stieltjes_transform(params, z.conj(), contour)?;
    let jump = (below - above) / (2.0 * PI * I);
    Ok((jump.re, normalized_weight(params, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::rel_err;
    use crate::quadrature_weight::squared_norm;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sch() -> QuadratureScheme {
        QuadratureScheme {
            tol: 1e-11,
            ..QuadratureScheme::default()
        }
    }

    #[test]
    fn guard_rejects_near_axis() {
        let p = MPParams::new(1.0, 1.0).unwrap();
        assert!(matches!(
            q_integral(&p, c(0.0, 0.1), 0, &sch()),
            Err(Error::NearAxis { .. })
        ));
    }

    #[test]
    fn conjugate_symmetry() {
        let p = MPParams::new(1.3, 0.9).unwrap();
        let z = c(0.4, 0.8);
        for n in [0, 2] {
            let a = q_integral(&p, z, n, &sch()).unwrap();
            let b = q_integral(&p, z.conj(), n, &sch()).unwrap();
            assert!(rel_err(a.conj(), b) < 1e-10);
        }
        let a = q0_closed(&p, z, &ContourSpec::default()).unwrap();
        let b = q_integral(&p, z.conj(), 0, &sch()).unwrap();
        assert!(rel_err(a.conj(), b) < 1e-8);
    }

    #[test]
    fn closed_form_matches_integral() {
        let p = MPParams::new(1.0, FRAC_PI_2).unwrap();
        let cs = ContourSpec::default();
        for z in [c(0.3, 0.5), c(0.0, 1.0), c(-0.7, 2.0), c(0.3, 1.0)] {
            let closed = q0_closed(&p, z, &cs).unwrap();
            let integral = q_integral(&p, z, 0, &sch()).unwrap();
            assert!((closed - integral).norm() <= 1e-8 * integral.norm().max(1e-300) + 1e-14, "z = {z}");
        }
    }

    #[test]
    fn stieltjes_equals_normalized_cauchy_integral() {
        let p = MPParams::new(0.7, 2.2).unwrap();
        let z = c(0.6, 0.9);
        let f = stieltjes_transform(&p, z, &ContourSpec::default()).unwrap();
        let cauchy = cauchy_integral(&p, z, 0, &sch()).unwrap() / squared_norm(&p, 0);
        assert!(rel_err(f, cauchy) < 1e-9);
    }

    #[test]
    fn recurrence_matches_integrals() {
        let p = MPParams::new(1.2, 1.0).unwrap();
        let z = c(0.3, 1.0);
        let rec = q_recurrence(&p, z, 6, &sch()).unwrap();
        assert!(!rec.unstable);
        let direct = cauchy_integrals(&p, z, 6, &sch()).unwrap();
        let recip = recip_weight_analytic(1.2, 1.0, z);
        for n in 0..=6 {
            assert!(rel_err(rec.values[n], direct[n] * recip) < 1e-7, "n = {n}");
        }
        assert_eq!(q_recurrence(&p, z, 0, &sch()).unwrap().values.len(), 1);
        assert!(q_recurrence(&p, z, 9, &sch()).is_err());
    }

    #[test]
    fn relations() {
        let p = MPParams::new(1.0, 1.2).unwrap();
        let (l, r) = lowering_q(&p, c(0.0, 2.0), 1, &sch()).unwrap();
        assert!((l - r).norm() <= 1e-6 * r.norm());
        let (l, r) = raising_q(&p, c(0.0, 2.0), 0, &sch()).unwrap();
        assert!((l - r).norm() <= 1e-6 * r.norm());
        let ((l1, r1), (l2, r2)) = lowering_raising_q(&p, c(1.0, 2.0), 3, &sch()).unwrap();
        assert!(rel_err(l1, r1) < 1e-6);
        assert!(rel_err(l2, r2) < 1e-6);
    }

    #[test]
    fn rodrigues() {
        let p = MPParams::new(1.1, 0.8).unwrap();
        let (l, r) = rodrigues_check(&p, c(0.2, 3.0), 1, &sch()).unwrap();
        assert!(rel_err(l, r) < 1e-6);
        let (l, r) = rodrigues_check(&p, c(0.0, 0.5), 0, &sch()).unwrap();
        assert_eq!(l, r);
        assert!(rodrigues_check(&p, c(0.0, 1.0), 3, &sch()).is_err());
    }

    #[test]
    fn mass_at_large_height() {
        let p = MPParams::new(1.0, FRAC_PI_2).unwrap();
        let m = mass_limit(&p, c(0.0, 50.0), &sch()).unwrap();
        let mass = squared_norm(&p, 0);
        assert!(rel_err(m, c(mass, 0.0)) < 1e-3);
    }

    #[test]
    fn inversion_symmetric_at_half_pi() {
        let p = MPParams::new(1.0, FRAC_PI_2).unwrap();
        let cs = ContourSpec::default();
        let (a, wa) = inversion_weight_check(&p, 1.0, 1e-2, &cs).unwrap();
        let (b, wb) = inversion_weight_check(&p, -1.0, 1e-2, &cs).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!((wa - wb).abs() < 1e-15);
        assert!(inversion_weight_check(&p, 0.0, 0.2, &cs).is_err());
    }
}
