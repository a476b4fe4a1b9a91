//! Agreement of the factored characteristic polynomial with the eigenvalue
//! phases read off Γ-series exponents, over several random triangulations.

use hypermono::exact::{format_rational, rat};
use hypermono::gammaseries::{eigenvalue_oracle, very_generic};
use hypermono::geometry::{refine_to_triangulation, t_zero, Configuration};
use hypermono::monodromy::{char_poly_local, roots_multiset};
use hypermono::Parameter;

fn main() -> hypermono::Result<()> {
    let cfg = Configuration::from_rows(&[[1, 1, 1, 1, 1, 1], [0, 1, 2, 0, 1, 0], [0, 0, 0, 1, 1, 2]])?;
    let beta = Parameter::rational(vec![rat(2, 7), rat(3, 11), rat(5, 13)]);
    let col = 2;
    let roots = roots_multiset(&char_poly_local(&cfg, &beta, col)?)?;
    println!("roots {:?}", roots.iter().map(format_rational).collect::<Vec<_>>());
    let t0 = t_zero(&cfg, col)?;
    for seed in [11, 12, 13] {
        let t = refine_to_triangulation(&cfg, &t0, seed)?;
        let phases = eigenvalue_oracle(&cfg, &beta, col, &t)?;
        println!(
            "seed {seed}: {:?}  very generic: {}  agree: {}",
            t.cell_sets(),
            very_generic(&cfg, &t, &beta)?,
            phases == roots
        );
    }
    Ok(())
}
