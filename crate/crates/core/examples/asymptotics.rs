//! Large-degree behaviour: Darboux forms and the growth of sum |p_n|^2.

use meixner::polynomials::MPParams;
use meixner::recursion_asymptotics::{
    darboux_deviation, dominant_deviation, general_solution, gf_identity_check, l2_partial_sums,
};
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let p = MPParams::new(1.0, std::f64::consts::FRAC_PI_2)?;
    for n in [50, 100, 200, 400] {
        println!(
            "n = {n:>3}: real axis {:.3e}, upper half-plane {:.3e}",
            darboux_deviation(&p, Complex64::new(0.7, 0.0), n, 8)?,
            dominant_deviation(&p, Complex64::new(0.5, 0.5), n)?
        );
    }

    let sums = l2_partial_sums(&p, 0.0, 500)?;
    for n in [125, 250, 500] {
        println!("S_{n} = {:.6}", sums[n]);
    }

    let x = Complex64::new(0.4, 0.0);
    let sol = general_solution(&p, x, Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.8), 30)?;
    println!("general solution residual: {:.2e}", sol.max_triple_residual());
    let (lhs, rhs) = gf_identity_check(&p, x, Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.8), Complex64::new(0.0, 0.2), 80)?;
    println!("generating function: {lhs:.12} vs {rhs:.12}");
    Ok(())
}
