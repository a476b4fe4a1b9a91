//! Regular subdivisions from layered weights: Γ_A, T0 by perturbation and by
//! the direct construction, a seeded refining triangulation, and the sign
//! test for refining T0.

use hypermono::geometry::{
    gamma_a, sign_criterion, refine_to_triangulation, refines, regular_subdivision, t_zero,
    t_zero_direct, Configuration, LexWeight,
};
use hypermono::exact::rat;

fn main() -> hypermono::Result<()> {
    let cfg = Configuration::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]])?;

    println!("Γ_A      {:?}", gamma_a(&cfg)?.cell_sets());
    let t0 = t_zero(&cfg, 4)?;
    println!("T0       {:?}", t0.cell_sets());
    println!("direct   {:?}", t_zero_direct(&cfg, 4)?.cell_sets());

    // a two-layer weight: heights 1, then −1 on the interior point
    let mut w = LexWeight::constant(5);
    w.push_layer(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1)]);
    let pulled = regular_subdivision(&cfg, &w)?;
    println!("pulled   {:?}", pulled.cell_sets());

    for seed in 0..6 {
        let t = refine_to_triangulation(&cfg, &gamma_a(&cfg)?, seed)?;
        println!(
            "seed {seed}   {:?}  refines T0: {}  sign test: {}",
            t.cell_sets(),
            refines(&cfg, &t, &t0),
            sign_criterion(&cfg, &t, 4)?
        );
    }
    Ok(())
}
