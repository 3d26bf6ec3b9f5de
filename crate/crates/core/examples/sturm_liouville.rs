//! T as a skew-adjoint operator and the positivity of -T p T.

use meixner::quadrature_weight::QuadratureScheme;
use meixner::sturm_liouville::{antisymmetry_check, test_battery, weight_ratio_p, SLOperator};
use meixner::t_calculus::StripFunction;
use num_complex::Complex64;

fn main() -> meixner::error::Result<()> {
    let scheme = QuadratureScheme {
        half_width: 14.0,
        panels: 28,
        nodes_per_panel: 32,
        tol: 1e-12,
    };
    let quadratic = SLOperator::new(|_| 1.0, StripFunction::entire(|z: Complex64| 1.0 + z * z));
    let ratio = SLOperator::new(|_| 1.0, weight_ratio_p(1.0));
    println!("{:>4} {:>14} {:>10} {:>10}", "pair", "(Tf,g)+(f,Tg)", "1+x^2", "ratio");
    for (k, (f, g)) in test_battery().into_iter().enumerate() {
        let (fs, gs) = (f.strip(), g.strip());
        println!(
            "{k:>4} {:>14.1e} {:>10.4} {:>10.4}",
            antisymmetry_check(&fs, &gs, &scheme)?,
            quadratic.positivity(&fs, &scheme)?,
            ratio.positivity(&fs, &scheme)?
        );
    }
    Ok(())
}
