//! The weight `omega(x) = e^{(2 phi - pi) x} |Gamma(lambda + i x)|^2`, its
//! analytic continuation, and real-line quadrature against it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundations::{cpow, ln_abs_gamma_sq, log_gamma, recip_gamma, ComplexValue, I};
use crate::plane_wave::{e_closed, expansion_coeff};
use crate::polynomials::{eval_recurrence, first_degree, MPParams};
use crate::quadrature::{composite, GaussLegendre, QuadEstimate};

/// Truncated composite Gauss-Legendre scheme on `[-half_width, half_width]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureScheme {
    pub half_width: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Target error, relative to `max(1, integral of |integrand|)`.
    pub tol: f64,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self {
            half_width: 40.0,
            panels: 40,
            nodes_per_panel: 32,
            tol: 1e-10,
        }
    }
}

impl QuadratureScheme {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidParams("half_width must be positive".into()));
        }
        if self.panels == 0 || self.nodes_per_panel == 0 {
            return Err(Error::InvalidParams(
                "panels and nodes_per_panel must be positive".into(),
            ));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidParams("tol must be positive".into()));
        }
        Ok(())
    }

    pub fn panel_width(&self) -> f64 {
        2.0 * self.half_width / self.panels as f64
    }

    /// Scheme for `integral of (degree-`degree` polynomial) * omega`: the
    /// truncation comes from the tail envelope, and panels are kept
    /// narrower than the distance to the nearest poles of `omega`.
    pub fn for_weight(params: &MPParams, degree: usize, tol: f64) -> Self {
        let rate = 2.0 * params.phi().min(PI - params.phi());
        let power = 2.0 * params.lambda() - 1.0 + degree as f64;
        let x = truncation(rate, power, tol);
        let base = Self::default();
        let width = base.panel_width().min(2.0 * params.lambda());
        Self {
            half_width: x,
            panels: ((2.0 * x / width).ceil() as usize).max(base.panels),
            nodes_per_panel: base.nodes_per_panel,
            tol,
        }
    }

    /// Same panel width, half-width raised to at least `x`.
    pub fn widened_to(&self, x: f64) -> Self {
        if x <= self.half_width {
            return *self;
        }
        let width = self.panel_width();
        Self {
            half_width: x,
            panels: (2.0 * x / width).ceil() as usize,
            ..*self
        }
    }

    /// Same half-width, panels no wider than `width`.
    pub fn with_max_panel_width(&self, width: f64) -> Self {
        let needed = (2.0 * self.half_width / width).ceil() as usize;
        Self {
            panels: self.panels.max(needed),
            ..*self
        }
    }
}

/// Smallest `X` (with a 20% margin) beyond which the envelope
/// `2 pi X^power e^{-rate X}` drops below `tol / (2 X)`.
pub fn truncation(rate: f64, power: f64, tol: f64) -> f64 {
    let ln_env = |x: f64| (2.0 * PI).ln() + power.max(0.0) * x.ln() - rate * x + (2.0 * x).ln();
    let target = (tol * 1e-2).ln();
    let mut x = (power.max(0.0) / rate).max(1.0);
    while ln_env(x) > target {
        x *= 1.05;
    }
    1.2 * x
}

/// `ln omega(x)`.
pub fn log_weight(params: &MPParams, x: f64) -> f64 {
    (2.0 * params.phi() - PI) * x
        + ln_abs_gamma_sq(params.lambda(), x).expect("lambda > 0 keeps lambda + ix off the poles")
}

/// `omega(x)`; zero when the value underflows (see [`weight_underflows`]).
pub fn weight(params: &MPParams, x: f64) -> f64 {
    log_weight(params, x).exp()
}

pub fn weight_underflows(params: &MPParams, x: f64) -> bool {
    log_weight(params, x) < f64::MIN_POSITIVE.ln()
}

/// `e^{(2 phi - pi) z} Gamma(lambda + i z) Gamma(lambda - i z)` for any real
/// `lambda` (shifted families may leave the positive range).
pub(crate) fn weight_analytic_raw(lambda: f64, phi: f64, z: Complex64) -> Result<Complex64> {
    let a = log_gamma(lambda + I * z)?;
    let b = log_gamma(lambda - I * z)?;
    Ok(((2.0 * phi - PI) * z + a + b).exp())
}

/// `1 / omega(z)`, entire in `z`.
pub(crate) fn recip_weight_analytic(lambda: f64, phi: f64, z: Complex64) -> Complex64 {
    (-(2.0 * phi - PI) * z).exp() * recip_gamma(lambda + I * z) * recip_gamma(lambda - I * z)
}

/// Analytic continuation of `omega` off the real axis.
pub fn weight_analytic(params: &MPParams, z: ComplexValue) -> Result<ComplexValue> {
    weight_analytic_raw(params.lambda(), params.phi(), z)
}

/// The weight attached to one family, for callers that pass it around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpec {
    pub params: MPParams,
}

impl WeightSpec {
    pub fn at(&self, x: f64) -> f64 {
        weight(&self.params, x)
    }

    pub fn analytic(&self, z: ComplexValue) -> Result<ComplexValue> {
        weight_analytic(&self.params, z)
    }
}

/// Nodes and weight-multiplied quadrature weights for a scheme at two
/// resolutions (`panels` and `2 panels`), so repeated integrals against the
/// same `omega` reuse the gamma evaluations.
#[derive(Debug, Clone)]
pub struct WeightedRule {
    coarse: Vec<(f64, f64)>,
    fine: Vec<(f64, f64)>,
    tol: f64,
}

fn weighted_nodes<W: Fn(f64) -> f64>(rule: &GaussLegendre, w: &W, x: f64, panels: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(panels * rule.len());
    let h = 2.0 * x / panels as f64;
    for k in 0..panels {
        let mid = -x + h * (k as f64 + 0.5);
        for (t, wt) in rule.nodes.iter().zip(&rule.weights) {
            let node = mid + 0.5 * h * t;
            out.push((node, 0.5 * h * wt * w(node)));
        }
    }
    out
}

impl WeightedRule {
    pub fn new(params: &MPParams, scheme: &QuadratureScheme) -> Result<Self> {
        Self::with_weight(|x| weight(params, x), scheme)
    }

    pub fn with_weight<W: Fn(f64) -> f64>(w: W, scheme: &QuadratureScheme) -> Result<Self> {
        scheme.validate()?;
        let rule = GaussLegendre::new(scheme.nodes_per_panel);
        Ok(Self {
            coarse: weighted_nodes(&rule, &w, scheme.half_width, scheme.panels),
            fine: weighted_nodes(&rule, &w, scheme.half_width, 2 * scheme.panels),
            tol: scheme.tol,
        })
    }

    pub fn fine_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.fine.iter().map(|&(x, _)| x)
    }

    pub fn coarse_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.coarse.iter().map(|&(x, _)| x)
    }

    /// Combines precomputed integrand values at the coarse and fine nodes.
    pub fn combine(&self, coarse_vals: &[Complex64], fine_vals: &[Complex64]) -> Result<QuadEstimate> {
        let coarse: Complex64 = self.coarse.iter().zip(coarse_vals).map(|(&(_, w), v)| w * v).sum();
        let mut fine = Complex64::new(0.0, 0.0);
        let mut l1 = 0.0;
        for (&(_, w), v) in self.fine.iter().zip(fine_vals) {
            fine += w * v;
            l1 += w.abs() * v.norm();
        }
        let error = (fine - coarse).norm();
        let allowed = self.tol * l1.max(1.0);
        if !(error <= allowed) || !fine.re.is_finite() || !fine.im.is_finite() {
            return Err(Error::NonConvergence {
                change: error,
                allowed,
            });
        }
        Ok(QuadEstimate {
            value: fine,
            error,
            l1,
        })
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Result<QuadEstimate> {
        let c: Vec<_> = self.coarse.iter().map(|&(x, _)| f(x)).collect();
        let fv: Vec<_> = self.fine.iter().map(|&(x, _)| f(x)).collect();
        self.combine(&c, &fv)
    }
}

/// `integral of integrand(x) omega(x) dx` over `[-X, X]` with a refinement
/// error estimate.
pub fn integrate_weighted<F>(params: &MPParams, integrand: F, scheme: &QuadratureScheme) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Complex64,
{
    WeightedRule::new(params, scheme)?.integrate(integrand)
}

/// `h_n = 2 pi Gamma(n + 2 lambda) / ((2 sin phi)^{2 lambda} n!)`.
pub fn squared_norm(params: &MPParams, n: usize) -> f64 {
    let (l, s2) = (params.lambda(), 2.0 * params.phi().sin());
    let ln = (2.0 * PI).ln() + log_gamma(Complex64::new(n as f64 + 2.0 * l, 0.0)).unwrap().re
        - 2.0 * l * s2.ln()
        - log_gamma(Complex64::new(n as f64 + 1.0, 0.0)).unwrap().re;
    ln.exp()
}

/// Gram matrix of `P_0 .. P_N` under `omega`, entry `(m, n)` divided by
/// `sqrt(h_m h_n)`.
pub fn orthogonality_matrix(
    params: &MPParams,
    n_max: usize,
    scheme: &QuadratureScheme,
) -> Result<Vec<Vec<f64>>> {
    if n_max > 25 {
        return Err(Error::DegreeCap {
            requested: n_max,
            max: 25,
        });
    }
    let rule = WeightedRule::new(params, scheme)?;
    let at = |x: f64| -> Vec<Complex64> {
        eval_recurrence(params, Complex64::new(x, 0.0), n_max)
            .map(|s| s.to_vec())
            .expect("degree within cap")
    };
    let coarse: Vec<Vec<Complex64>> = rule.coarse_nodes().map(at).collect();
    let fine: Vec<Vec<Complex64>> = rule.fine_nodes().map(at).collect();
    let norms: Vec<f64> = (0..=n_max).map(|n| squared_norm(params, n)).collect();
    let mut gram = vec![vec![0.0; n_max + 1]; n_max + 1];
    for m in 0..=n_max {
        for n in m..=n_max {
            let cv: Vec<_> = coarse.iter().map(|p| p[m] * p[n]).collect();
            let fv: Vec<_> = fine.iter().map(|p| p[m] * p[n]).collect();
            let est = rule.combine(&cv, &fv)?;
            let v = est.value.re / (norms[m] * norms[n]).sqrt();
            gram[m][n] = v;
            gram[n][m] = v;
        }
    }
    Ok(gram)
}

/// `W(x) = (2 sin phi)^{2 lambda} / (2 pi Gamma(2 lambda)) omega(x)`, a
/// probability density.
pub fn normalized_weight(params: &MPParams, x: f64) -> f64 {
    (log_weight(params, x) - squared_norm(params, 0).ln()).exp()
}

/// Both sides of
/// `(sec z)^lambda = 2^{lambda-2} / (pi Gamma(lambda)) integral e^{z t} |Gamma((lambda + i t)/2)|^2 dt`.
pub fn sec_integral_check(
    lambda: f64,
    z: ComplexValue,
    scheme: &QuadratureScheme,
) -> Result<(ComplexValue, ComplexValue)> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParams(format!("lambda must be positive, got {lambda}")));
    }
    if !(z.re.abs() < PI / 2.0) {
        return Err(Error::InvalidParams("need |Re z| < pi/2".into()));
    }
    scheme.validate()?;
    let lhs = cpow(1.0 / z.cos(), Complex64::new(lambda, 0.0));
    let rate = PI / 2.0 - z.re.abs();
    let sch = scheme
        .widened_to(truncation(rate, lambda - 1.0, scheme.tol))
        .with_max_panel_width(lambda.min(2.0));
    let w = |t: f64| (z * t + ln_abs_gamma_sq(lambda / 2.0, t / 2.0).unwrap()).exp();
    let rule = GaussLegendre::new(sch.nodes_per_panel);
    let (coarse, _) = composite(&rule, &mut |t| w(t), -sch.half_width, sch.half_width, sch.panels);
    let (fine, l1) = composite(&rule, &mut |t| w(t), -sch.half_width, sch.half_width, 2 * sch.panels);
    let change = (fine - coarse).norm();
    if change > sch.tol * l1.max(1.0) {
        return Err(Error::NonConvergence {
            change,
            allowed: sch.tol * l1.max(1.0),
        });
    }
    let pre = 2f64.powf(lambda - 2.0) / (PI * log_gamma(Complex64::new(lambda, 0.0))?.exp().re);
    Ok((lhs, pre * fine))
}

/// `((g_0 quadrature, g_0 closed form), (g_1 quadrature, g_1 closed form))`
/// for the plane-wave expansion coefficients.
pub fn g01_check(
    params: &MPParams,
    t: f64,
    scheme: &QuadratureScheme,
) -> Result<((ComplexValue, ComplexValue), (ComplexValue, ComplexValue))> {
    let tc = Complex64::new(t, 0.0);
    let sch = scheme.widened_to(QuadratureScheme::for_weight(params, 1, scheme.tol).half_width);
    let sch = sch.with_max_panel_width(2.0 * params.lambda());
    let rule = WeightedRule::new(params, &sch)?;
    let h0 = squared_norm(params, 0);
    let h1 = squared_norm(params, 1);
    let q0 = rule.integrate(|x| e_closed(Complex64::new(x, 0.0), tc).unwrap())?;
    let q1 = rule.integrate(|x| {
        let xc = Complex64::new(x, 0.0);
        e_closed(xc, tc).unwrap() * first_degree(params.lambda(), params.phi(), xc)
    })?;
    Ok((
        (q0.value / h0, expansion_coeff(params, tc, 0)?),
        (q1.value / h1, expansion_coeff(params, tc, 1)?),
    ))
}
