//! The central difference operator T and its action on the polynomials.

use meixner::plane_wave::e_closed;
use meixner::polynomials::{eval_basis_phi, MPParams};
use meixner::t_calculus::{apply_t, apply_t_power, lowering_pair, raising_pair, StripFunction};
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let x = Complex64::new(0.8, 0.0);

    // T phi_n = i n phi_{n-1}
    let basis = StripFunction::entire(|z| eval_basis_phi(1.2, z, 4));
    println!("T phi_4(x) = {}", apply_t(&basis, x)?);
    println!("4 i phi_3(x) = {}", Complex64::i() * 4.0 * eval_basis_phi(1.2, x, 3));

    // exponential eigenfunction: T E = i t E
    let t = Complex64::new(0.6, 0.0);
    let e = StripFunction::entire(move |z| e_closed(z, t).unwrap());
    println!("T E / E = {}", apply_t(&e, x)? / e.eval(x));
    println!("T^3 E / E = {}", apply_t_power(&e, x, 3)? / e.eval(x));

    // a function analytic only in |Im z| < 1 refuses deep shifts
    let narrow = StripFunction::new(|z: Complex64| 1.0 / (z * z + 1.0), 0.99)?;
    match apply_t_power(&narrow, x, 2) {
        Ok(v) => println!("T^2 on the narrow strip: {v}"),
        Err(e) => println!("T^2 on the narrow strip: {e}"),
    }

    let p = MPParams::new(1.4, 1.0)?;
    let (lhs, rhs) = lowering_pair(&p, x, 7, 2)?;
    println!("lowering n=7 k=2: {lhs} vs {rhs}");
    let (lhs, rhs) = raising_pair(&p, x, 3)?;
    println!("raising n=3: {lhs} vs {rhs}");
    Ok(())
}
