//! Expanding the T-exponential E(x, t) in the polynomials.

use meixner::plane_wave::{c_and_s, e_closed, e_series, plane_wave_partial, ExpansionCoeffs};
use meixner::polynomials::MPParams;
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let (x, t) = (Complex64::new(0.7, 0.0), Complex64::new(0.3, 0.0));
    let exact = e_closed(x, t)?;
    println!("E(x, t) = {exact}");
    let (c, s) = c_and_s(x, t)?;
    println!("C = {c}, S = {s}, C + iS = {}", c + Complex64::i() * s);
    println!("lambda-series, 40 terms: {}", e_series(2.0, x, t, 40));

    let p = MPParams::new(1.0, std::f64::consts::FRAC_PI_2)?;
    let g = ExpansionCoeffs::new(&p, t, 6)?;
    for (n, gn) in g.coeffs.iter().enumerate() {
        println!("g_{n} = {gn:.6e}");
    }
    for n in [10, 20, 40, 80, 120] {
        let err = (plane_wave_partial(&p, x, t, n)? - exact).norm();
        println!("partial sum to degree {n:>3}: error {err:.2e}");
    }
    Ok(())
}
