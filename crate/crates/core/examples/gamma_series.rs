//! Γ-series on the simplices of a triangulation: coset representatives,
//! truncated values, operator residuals, and transport around x_col = 0.

use num_complex::Complex64;

use hypermono::exact::{format_rational, rat};
use hypermono::gammaseries::{
    exponent_vector, loop_phase, loop_transport_check, omega_reps, operator_residual, truncated_eval, Phase,
};
use hypermono::geometry::Configuration;
use hypermono::Parameter;

fn main() -> hypermono::Result<()> {
    let cfg = Configuration::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]])?;
    let beta = Parameter::rational(vec![rat(1, 3), rat(1, 5), rat(1, 7)]);
    let x: Vec<Complex64> = [0.01, 1.0, 0.01, 1.0, 1.0].iter().map(|&r| Complex64::new(r, 0.0)).collect();

    // a cell of T∞ with two coset representatives
    println!("Ω for [0, 1, 4] = {:?}", omega_reps(&cfg, &[0, 1, 4])?.reps);

    // the simplices of T0 through the marked column x5
    for sigma in [vec![1, 3, 4], vec![2, 3, 4]] {
        let omega = omega_reps(&cfg, &sigma)?;
        println!("σ = {sigma:?}  Ω = {:?}", omega.reps);
        for k in &omega.reps {
            let spec = exponent_vector(&cfg, &sigma, k, &beta)?;
            let n12 = truncated_eval(&cfg, &spec, &x, 12)?;
            let n17 = truncated_eval(&cfg, &spec, &x, 17)?;
            let residual = operator_residual(&cfg, &spec, 8)?;
            println!(
                "  k = {k:?}: φ ≈ {n17:.10}  |N12 − N17| = {:.1e}  residual ok: {}",
                (n12 - n17).norm(),
                residual.passes(0.0)
            );
            let check = loop_transport_check(&cfg, &spec, 4, &x, 0.05, 64, 12)?;
            if let Phase::Exact(p) = loop_phase(&spec, 4) {
                println!("  loop around x5: phase {}, error {:.1e}", format_rational(&p), check.error);
            }
        }
    }
    Ok(())
}
