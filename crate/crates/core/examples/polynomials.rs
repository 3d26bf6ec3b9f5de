//! Evaluating P_n^(lambda)(x; phi) three ways, plus the numerator polynomials.
//!
//! Run with `cargo run --example polynomials`.

use meixner::foundations::rel_err;
use meixner::polynomials::{
    eval_generalized, eval_hyp, eval_recurrence, eval_sum, leading_coefficient, numerator_recurrence,
    GenMPParams, MPParams,
};
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let p = MPParams::new(1.5, 0.9)?;
    let x = Complex64::new(2.25, 0.0);

    let seq = eval_recurrence(&p, x, 12)?;
    println!("{:>3} {:>22} {:>12} {:>12}", "n", "P_n(x)", "hyp rel err", "sum rel err");
    for n in 0..=12 {
        let v = seq.value(n);
        println!(
            "{n:>3} {:>22.15e} {:>12.2e} {:>12.2e}",
            v.re,
            rel_err(eval_hyp(&p, x, n), v),
            rel_err(eval_sum(&p, x, n), v)
        );
    }
    println!("leading coefficient of P_12: {:.6e}", leading_coefficient(&p, 12));

    let star = numerator_recurrence(&p, x, 6)?;
    println!("numerator polynomials P*_0..P*_6 at x = {}:", x.re);
    for n in 0..=6 {
        println!("  {n}: {:.12e}", star.value(n).re);
    }

    // the (theta, psi) family at a complex point
    let g = GenMPParams::new(1.5, 0.4, 1.1)?;
    let z = Complex64::new(0.3, 0.2);
    println!("generalized P_4 at {z}: {}", eval_generalized(&g, z, 4));

    // large degrees stay finite through log-scale rescaling
    let big = eval_recurrence(&MPParams::new(300.0, 0.5)?, Complex64::new(1.0, 0.0), 500)?;
    println!("ln |P_500| for lambda = 300: {:.6}", big.ln_abs(500));
    Ok(())
}
