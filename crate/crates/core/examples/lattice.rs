//! Smith normal form, lattice index, and rewriting a configuration in a
//! basis of the lattice its columns generate.

use hypermono::exact::{rat, smith_normal_form, IntMatrix};
use hypermono::geometry::Configuration;
use hypermono::Parameter;

fn main() -> hypermono::Result<()> {
    let a = IntMatrix::from_rows(&[[2, 0, 2], [0, 2, 2]])?;
    let snf = smith_normal_form(&a);
    println!("Smith diagonal {:?}, index {:?}", snf.diag, snf.index());
    println!("kernel basis {:?}", snf.kernel_basis());

    match Configuration::new(a.clone()) {
        Ok(_) => println!("accepted as is"),
        Err(e) => println!("rejected: {e}"),
    }
    let beta = Parameter::rational(vec![rat(2, 3), rat(2, 5)]);
    let (cfg, beta, transform) = Configuration::normalized(&a, Some(&beta))?;
    println!("lattice basis {:?}", transform.basis);
    println!("normalized A {:?}, β {:?}", cfg.columns(), beta);
    Ok(())
}
