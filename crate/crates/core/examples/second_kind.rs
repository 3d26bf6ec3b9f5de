//! Functions of the second kind and the Stieltjes transform of the weight.

use meixner::polynomials::MPParams;
use meixner::quadrature_weight::{squared_norm, QuadratureScheme};
use meixner::second_kind::{
    inversion_weight_check, mass_limit, q0_closed, q_recurrence, stieltjes_ratio_check, ContourSpec,
};
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let p = MPParams::new(1.0, std::f64::consts::FRAC_PI_2)?;
    let scheme = QuadratureScheme {
        tol: 1e-11,
        ..QuadratureScheme::default()
    };
    let contour = ContourSpec::default();
    let z = Complex64::new(0.3, 1.0);

    let q = q_recurrence(&p, z, 8, &scheme)?;
    println!("Q_n at z = {z} ({:.1} digits lost):", q.digits_lost);
    for (n, v) in q.values.iter().enumerate() {
        println!("  Q_{n} = {v:.10}");
    }
    println!("Q_0 by contour integral: {:.10}", q0_closed(&p, z, &contour)?);

    let i = Complex64::new(0.0, 1.0);
    for n in [50, 200, 400] {
        let (ratio, f) = stieltjes_ratio_check(&p, i, n, &contour)?;
        println!("P*_{n}/P_{n} at i: {ratio:.8}  (F = {f:.8})");
    }

    for eps in [1e-2, 1e-3] {
        let (jump, w) = inversion_weight_check(&p, 1.0, eps, &contour)?;
        println!("jump across the axis at x = 1, eps = {eps}: {jump:.8} vs W = {w:.8}");
    }

    let m = mass_limit(&p, Complex64::new(0.0, 50.0), &scheme)?;
    println!("z C_0(z) at 50i: {m:.6} (total mass {:.6})", squared_norm(&p, 0));
    Ok(())
}
