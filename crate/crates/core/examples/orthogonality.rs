//! The weight, its quadrature and the Gram matrix of the polynomials.

use meixner::polynomials::{eval, MPParams};
use meixner::quadrature_weight::{
    integrate_weighted, orthogonality_matrix, sec_integral_check, squared_norm, weight, QuadratureScheme,
};
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let p = MPParams::new(1.0, std::f64::consts::FRAC_PI_3)?;
    for x in [0.0, 1.0, 3.0, 10.0] {
        println!("omega({x}) = {:.6e}", weight(&p, x));
    }

    let scheme = QuadratureScheme::for_weight(&p, 6, 1e-12);
    println!("scheme: half-width {:.1}, {} panels", scheme.half_width, scheme.panels);
    let est = integrate_weighted(
        &p,
        |x| eval(&p, Complex64::new(x, 0.0), 3).unwrap().powi(2),
        &scheme,
    )?;
    println!("integral of P_3^2 omega = {:.12} (closed form {:.12})", est.value.re, squared_norm(&p, 3));

    let gram = orthogonality_matrix(&p, 6, &QuadratureScheme::for_weight(&p, 12, 1e-12))?;
    println!("normalized Gram matrix, P_0..P_6:");
    for row in gram {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>9.1e}")).collect();
        println!("  {}", cells.join(" "));
    }

    let (num, closed) = sec_integral_check(2.0, Complex64::new(0.3, 0.0), &QuadratureScheme::default())?;
    println!("sec-power integral: {num:.12} vs {closed:.12}");
    Ok(())
}
