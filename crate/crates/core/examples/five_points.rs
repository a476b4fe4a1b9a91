//! The 3×5 worked configuration end to end: subdivisions, local and
//! infinity characteristic polynomials, and the eigenvalue oracle.
//!
//! ```text
//! cargo run --example five_points
//! ```

use hypermono::exact::rat;
use hypermono::gammaseries::eigenvalue_oracle;
use hypermono::geometry::{normalized_volume, refine_to_triangulation, t_infinity, t_zero, Configuration};
use hypermono::monodromy::{char_poly_infinity, char_poly_local, roots_multiset, sigma_set};
use hypermono::Parameter;

fn one_based(cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    cells.into_iter().map(|c| c.into_iter().map(|j| j + 1).collect()).collect()
}

fn main() -> hypermono::Result<()> {
    let cfg = Configuration::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]])?;
    let col = 4;
    let beta = Parameter::rational(vec![rat(1, 3), rat(1, 5), rat(1, 7)]);

    let t0 = t_zero(&cfg, col)?;
    println!("T0 = {:?}", one_based(t0.cell_sets()));
    println!("T∞ = {:?}", one_based(t_infinity(&cfg, col)?.cell_sets()));
    println!("vol(τ1) = {}", normalized_volume(&cfg, &[0, 1, 2, 3]));

    for f in sigma_set(&cfg, &t0, col)? {
        println!("τ = {:?}  ρ = {:?}  h = {}", f.tau.iter().map(|j| j + 1).collect::<Vec<_>>(), f.rho, f.height);
    }

    let local = char_poly_local(&cfg, &beta, col)?;
    println!("λ0(z) = {local}");
    println!("λ∞(z) = {}", char_poly_infinity(&cfg, &beta, col)?);

    let t = refine_to_triangulation(&cfg, &t0, 1)?;
    let phases = eigenvalue_oracle(&cfg, &beta, col, &t)?;
    let roots = roots_multiset(&local)?;
    println!("oracle on {:?}: {}", one_based(t.cell_sets()), phases == roots);
    Ok(())
}
