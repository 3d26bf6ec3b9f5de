//! Gauss-Legendre rules and composite integration along segments.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of `f` over the real interval `[a, b]`.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += *w * f(mid + half * x);
        }
        s * half
    }

    /// Integral of `f` along the straight segment from `a` to `b` in the plane.
    pub fn integrate_segment<F>(&self, mut f: F, a: Complex64, b: Complex64) -> Complex64
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += *w * f(mid + half * *x);
        }
        s * half
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral together with a refinement-based error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: Complex64,
    pub error: f64,
    /// Integral of `|f|`, the scale the error is judged against.
    pub l1: f64,
}

/// Composite rule: `panels` equal panels of the given rule on `[a, b]`.
pub fn composite<F>(rule: &GaussLegendre, f: &mut F, a: f64, b: f64, panels: usize) -> (Complex64, f64)
where
    F: FnMut(f64) -> Complex64,
{
    let h = (b - a) / panels as f64;
    let mut s = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for k in 0..panels {
        let lo = a + h * k as f64;
        let half = 0.5 * h;
        let mid = lo + half;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = f(mid + half * x);
            s += *w * half * v;
            l1 += *w * half * v.norm();
        }
    }
    (s, l1)
}

/// Composite integration on `[a, b]`, repeated with twice the panels; the
/// difference is the error estimate. Fails when it exceeds
/// `tol * max(1, integral of |f|)`.
pub fn integrate_refined<F>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    nodes: usize,
    tol: f64,
) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Complex64,
{
    let rule = GaussLegendre::new(nodes);
    let (coarse, _) = composite(&rule, &mut f, a, b, panels);
    let (fine, l1) = composite(&rule, &mut f, a, b, 2 * panels);
    let error = (fine - coarse).norm();
    let allowed = tol * l1.max(1.0);
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
