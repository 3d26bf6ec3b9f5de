//! The identity battery run by `mpx verify`.
//!
//! Each check is named `module.invariant` and reports the largest error
//! measured over its sample points. Random points come from a ChaCha8
//! generator seeded by the caller, so a fixed seed gives identical reports.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::foundations::{rel_err, I};
use crate::plane_wave::{e_closed, e_series, plane_wave_partial, ExpansionCoeffs};
use crate::polynomials::{
    connection_lhs_rhs, eval_basis_phi, eval_hyp, eval_recurrence, eval_sum, numerator_explicit,
    numerator_recurrence, MPParams,
};
use crate::quadrature_weight::{
    g01_check, normalized_weight, orthogonality_matrix, sec_integral_check, squared_norm,
    QuadratureScheme, WeightedRule,
};
use crate::recursion_asymptotics::{
    darboux_deviation, dominant_deviation, gf_identity_check, l2_divergence_witness,
};
use crate::second_kind::{
    cauchy_integrals, inversion_weight_check, lowering_q, mass_limit, q0_closed, q_integral,
    q_recurrence, raising_q, rodrigues_check, stieltjes_ratio_check, ContourSpec,
};
use crate::sturm_liouville::{antisymmetry_check, test_battery, weight_ratio_p, SLOperator};
use crate::t_calculus::{apply_t, apply_t_power, lowering_pair, raising_pair, StripFunction};

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(check: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub params: MPParams,
    pub seed: u64,
    pub scheme: QuadratureScheme,
    /// Random points per sampled check.
    pub samples: usize,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Runs every check and returns the results sorted by name.
pub fn run_battery(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let p = cfg.params;
    let (l, phi) = (p.lambda(), p.phi());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut xs = |lo: f64, hi: f64| -> Vec<f64> { (0..cfg.samples).map(|_| rng.gen_range(lo..hi)).collect() };
    let wide = xs(-10.0, 10.0);
    let mid = xs(-5.0, 5.0);
    let small_t = xs(-0.5, 0.5);
    let unit_t = xs(-1.0, 1.0);
    let tol = cfg.scheme.tol;
    let mut out = Vec::new();

    // polynomials
    let (mut three, mut conv, mut conn) = (0.0f64, 0.0f64, 0.0f64);
    for &x in &wide {
        let xc = c(x, 0.0);
        let rec = eval_recurrence(&p, xc, 30)?;
        for n in 0..=30 {
            three = three
                .max(rel_err(eval_hyp(&p, xc, n), rec.value(n)))
                .max(rel_err(eval_sum(&p, xc, n), rec.value(n)));
        }
    }
    for &x in &mid {
        let xc = c(x, 0.0);
        let num = numerator_recurrence(&p, xc, 20)?;
        for n in 0..=20 {
            conv = conv.max((numerator_explicit(&p, xc, n) - num.value(n)).norm() / num.value(n).norm().max(1.0));
        }
        for n in [0, 3, 8] {
            let (a, b) = connection_lhs_rhs(&p, xc, n);
            conn = conn.max(rel_err(a, b));
        }
    }
    out.push(CheckResult::new("polynomials.three_route_agreement", three, 1e-10));
    out.push(CheckResult::new("polynomials.numerator_convolution", conv, 1e-9));
    out.push(CheckResult::new("polynomials.connection_relation", conn, 1e-9));

    // t_calculus
    let (mut basis, mut lower, mut raise, mut eig) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (&x, &t) in mid.iter().zip(&unit_t) {
        let xc = c(x, 0.0);
        for n in 1..=20 {
            let f = StripFunction::entire(|z| eval_basis_phi(l, z, n));
            basis = basis.max(rel_err(apply_t(&f, xc)?, I * n as f64 * eval_basis_phi(l, xc, n - 1)));
        }
        for n in 1..=10 {
            for k in 1..=n.min(3) {
                let (a, b) = lowering_pair(&p, xc, n, k)?;
                lower = lower.max(rel_err(a, b));
            }
        }
        if l > 0.5 {
            for n in 0..=10 {
                let (a, b) = raising_pair(&p, xc, n)?;
                raise = raise.max(rel_err(a, b));
            }
        }
        let tc = c(t, 0.0);
        let e = StripFunction::entire(move |z| e_closed(z, tc).expect("real t"));
        let ex = e.eval(xc);
        eig = eig
            .max(rel_err(apply_t(&e, xc)?, I * tc * ex))
            .max(rel_err(apply_t_power(&e, xc, 2)?, -tc * tc * ex));
    }
    out.push(CheckResult::new("t_calculus.basis_lowering", basis, 1e-11));
    out.push(CheckResult::new("t_calculus.lowering", lower, 1e-9));
    if l > 0.5 {
        out.push(CheckResult::new("t_calculus.raising", raise, 1e-9));
    }
    out.push(CheckResult::new("t_calculus.exponential_eigenfunction", eig, 1e-11));

    // plane_wave
    let (mut series, mut diff_eq) = (0.0f64, 0.0f64);
    for (&x, &t) in mid.iter().zip(&small_t) {
        let (xc, tc) = (c(x / 2.0, 0.0), c(t, 0.0));
        let closed = e_closed(xc, tc)?;
        series = series
            .max((e_series(0.7, xc, tc, 80) - closed).norm())
            .max((e_series(2.1, xc, tc, 80) - closed).norm());
    }
    let (s, cs) = phi.sin_cos();
    let t = c(0.4, 0.0);
    let g = ExpansionCoeffs::new(&p, t, 22)?.coeffs;
    for n in 0..=20 {
        let lhs = -t * t * (g[n] - 2.0 * cs * g[n + 1] + g[n + 2]);
        diff_eq = diff_eq.max(rel_err(lhs, 4.0 * s * s * g[n + 2]));
    }
    let partial = (plane_wave_partial(&p, c(0.7, 0.0), c(0.3, 0.0), 120)? - e_closed(c(0.7, 0.0), c(0.3, 0.0))?).norm();
    out.push(CheckResult::new("plane_wave.series_limit", series, 1e-9));
    out.push(CheckResult::new("plane_wave.difference_equation", diff_eq, 1e-11));
    out.push(CheckResult::new("plane_wave.partial_sum", partial, 1e-8));

    // quadrature_weight
    let gram_scheme = QuadratureScheme::for_weight(&p, 20, tol.min(1e-12));
    let gram = orthogonality_matrix(&p, 10, &gram_scheme)?;
    let mut gram_err = 0.0f64;
    for (m, row) in gram.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            gram_err = gram_err.max((v - if m == n { 1.0 } else { 0.0 }).abs());
        }
    }
    out.push(CheckResult::new("quadrature_weight.orthogonality_matrix", gram_err, 1e-7));
    let mass_scheme = QuadratureScheme::for_weight(&p, 0, tol.min(1e-12));
    let mass = WeightedRule::with_weight(|x| normalized_weight(&p, x), &mass_scheme)?.integrate(|_| c(1.0, 0.0))?;
    out.push(CheckResult::new("quadrature_weight.total_mass", (mass.value.re - 1.0).abs(), 1e-8));
    let mut g01 = 0.0f64;
    for t in [0.0, 0.4, -0.5] {
        let ((q0, c0), (q1, c1)) = g01_check(&p, t, &cfg.scheme)?;
        g01 = g01.max((q0 - c0).norm()).max((q1 - c1).norm());
    }
    out.push(CheckResult::new("quadrature_weight.g01_check", g01, 1e-7));
    let mut sec = 0.0f64;
    for lambda in [1.0, 2.0] {
        for z in [0.0, 0.3] {
            let (a, b) = sec_integral_check(lambda, c(z, 0.0), &cfg.scheme)?;
            sec = sec.max((a - b).norm());
        }
    }
    out.push(CheckResult::new("quadrature_weight.sec_integral", sec, 1e-7));

    // sturm_liouville
    let sl_scheme = QuadratureScheme {
        half_width: 14.0,
        panels: 28,
        nodes_per_panel: 32,
        tol: 1e-12,
    };
    let unit = SLOperator::new(|_| 1.0, StripFunction::entire(|_| c(1.0, 0.0)));
    let quadratic = SLOperator::new(|_| 1.0, StripFunction::entire(|z: Complex64| 1.0 + z * z));
    let ratio = SLOperator::new(|_| 1.0, weight_ratio_p(l));
    let (mut anti, mut most_negative, mut mech) = (0.0f64, 0.0f64, 0.0f64);
    for (f, g) in test_battery() {
        let (fs, gs) = (f.strip(), g.strip());
        anti = anti.max(antisymmetry_check(&fs, &gs, &sl_scheme)?);
        mech = mech
            .max(unit.mechanism_residual(&fs, &gs, &sl_scheme)?)
            .max(quadratic.mechanism_residual(&fs, &gs, &sl_scheme)?);
        for h in [&fs, &gs] {
            for v in [
                unit.positivity(h, &sl_scheme)?,
                quadratic.positivity(h, &sl_scheme)?,
                ratio.positivity(h, &sl_scheme)?,
            ] {
                most_negative = most_negative.max(-v);
            }
        }
    }
    out.push(CheckResult::new("sturm_liouville.antisymmetry", anti, 1e-8));
    out.push(CheckResult::new("sturm_liouville.positivity", most_negative, 1e-10));
    out.push(CheckResult::new("sturm_liouville.orthogonality_mechanism", mech, 1e-8));

    // recursion_asymptotics
    let mut gf = 0.0f64;
    for (&x, &t) in mid.iter().zip(&small_t) {
        let xc = c(x, 0.0);
        let tc = c(0.2 * (PI * t).cos(), 0.2 * (PI * t).sin());
        let (a, b) = gf_identity_check(&p, xc, c(1.0, 0.5), c(-0.3, 0.8), tc, 80)?;
        gf = gf.max((a - b).norm());
        let (a, b) = gf_identity_check(&p, xc, c(0.0, 0.0), c(2.0 * s, 0.0), tc, 80)?;
        gf = gf.max((a - b).norm());
    }
    out.push(CheckResult::new("recursion_asymptotics.gf_identity", gf, 1e-8));
    let ns = [100, 200, 400];
    for (name, dev) in [
        (
            "recursion_asymptotics.darboux_real_axis",
            ns.iter().map(|&n| darboux_deviation(&p, c(0.7, 0.0), n, 8)).collect::<Result<Vec<_>>>()?,
        ),
        (
            "recursion_asymptotics.darboux_upper_half_plane",
            ns.iter().map(|&n| dominant_deviation(&p, c(0.5, 0.5), n)).collect::<Result<Vec<_>>>()?,
        ),
    ] {
        let mut r = CheckResult::new(name, dev[2], 5e-2);
        r.pass &= dev[2] < dev[0];
        out.push(r);
    }
    let mut shortfall = 0.0f64;
    for x in [0.0, 2.0] {
        let s200 = l2_divergence_witness(&p, x, 200)?;
        let s400 = l2_divergence_witness(&p, x, 400)?;
        shortfall = shortfall.max((1.5 * s200 - s400).max(0.0) / s200);
    }
    out.push(CheckResult::new("recursion_asymptotics.l2_divergence_witness", shortfall, 0.0));

    // second_kind
    let q_scheme = QuadratureScheme {
        tol: tol.min(1e-11),
        ..cfg.scheme
    };
    let contour = ContourSpec::default();
    let (mut cross, mut conj) = (0.0f64, 0.0f64);
    for y in [0.5, 1.0, 2.0] {
        let z = c(0.3, y);
        let direct = cauchy_integrals(&p, z, 8, &q_scheme)?;
        let recip = q_integral(&p, z, 0, &q_scheme)? / direct[0];
        let rec = q_recurrence(&p, z, 8, &q_scheme)?;
        for n in 0..=8 {
            cross = cross.max(rel_err(rec.values[n], direct[n] * recip));
        }
        cross = cross.max(rel_err(q0_closed(&p, z, &contour)?, direct[0] * recip));
        let below = q_integral(&p, z.conj(), 2, &q_scheme)?;
        conj = conj.max(rel_err(below.conj(), q_integral(&p, z, 2, &q_scheme)?));
    }
    out.push(CheckResult::new("second_kind.cross_route", cross, 1e-6));
    out.push(CheckResult::new("second_kind.conjugate_symmetry", conj, 1e-8));
    let mut rel = 0.0f64;
    for (z, n) in [(c(0.0, 2.0), 1), (c(1.0, 2.0), 3)] {
        let (a, b) = lowering_q(&p, z, n, &q_scheme)?;
        rel = rel.max(rel_err(a, b));
        if l > 0.5 {
            let (a, b) = raising_q(&p, z, n - 1, &q_scheme)?;
            rel = rel.max(rel_err(a, b));
        }
    }
    out.push(CheckResult::new("second_kind.lowering_raising", rel, 1e-6));
    let mut rod = 0.0f64;
    for (z, n) in [(c(0.0, 3.0), 1), (c(0.4, 2.0), 2), (c(0.0, 4.0), 3)] {
        let (a, b) = rodrigues_check(&p, z, n, &q_scheme)?;
        rod = rod.max(rel_err(a, b));
    }
    out.push(CheckResult::new("second_kind.rodrigues", rod, 1e-5));
    let (r200, f) = stieltjes_ratio_check(&p, c(0.0, 1.0), 200, &contour)?;
    let (r400, _) = stieltjes_ratio_check(&p, c(0.0, 1.0), 400, &contour)?;
    let mut sr = CheckResult::new("second_kind.stieltjes_ratio", (r200 / f - 1.0).norm(), 2e-2);
    sr.pass &= (r400 / f - 1.0).norm() < (r200 / f - 1.0).norm();
    out.push(sr);
    // sample the bulk of the weight: its mean and one unit to the right
    let mean = -l * phi.cos() / phi.sin();
    let mut inv = 0.0f64;
    for x in [mean, mean + 1.0] {
        let (jump, w) = inversion_weight_check(&p, x, 1e-3, &contour)?;
        inv = inv.max((jump - w).abs() / w);
    }
    out.push(CheckResult::new("second_kind.stieltjes_inversion", inv, 1e-3));
    // go high enough that the 1/z contribution of the mean stays below
    // the tolerance
    let height = 50.0 * (40.0 * mean.abs()).max(1.0);
    let m = mass_limit(&p, c(0.0, height), &q_scheme)?;
    out.push(CheckResult::new(
        "second_kind.mass_limit",
        rel_err(m, c(squared_norm(&p, 0), 0.0)),
        1e-3,
    ));

    out.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(out)
}
