//! Characteristic polynomials around x_col = 0 and ∞ for a few small
//! configurations, with their root phases.

use hypermono::exact::{format_rational, rat};
use hypermono::geometry::Configuration;
use hypermono::monodromy::{char_poly_infinity, char_poly_local, roots_multiset};
use hypermono::{Error, Parameter};

fn show(name: &str, rows: &[&[i64]], beta: Parameter, col: usize) -> hypermono::Result<()> {
    let cfg = Configuration::from_rows(rows)?;
    println!("{name}  col {}", col + 1);
    match char_poly_local(&cfg, &beta, col) {
        Ok(p) => {
            let roots: Vec<String> = roots_multiset(&p)?.iter().map(format_rational).collect();
            println!("  λ0 = {p}   roots {roots:?}");
            println!("  λ∞ = {}", char_poly_infinity(&cfg, &beta, col)?);
        }
        Err(e @ Error::NotAVertex(_)) => println!("  {e}"),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn main() -> hypermono::Result<()> {
    let b2 = Parameter::rational(vec![rat(1, 3), rat(1, 4)]);
    show("triangle", &[&[1, 1], &[0, 1]], b2.clone(), 1)?;
    show("segment 0..3", &[&[1, 1, 1, 1], &[0, 1, 2, 3]], b2.clone(), 3)?;
    show("segment 0..3", &[&[1, 1, 1, 1], &[0, 1, 2, 3]], b2, 1)?;
    let b3 = Parameter::rational(vec![rat(1, 3), rat(1, 5), rat(1, 7)]);
    show(
        "square pyramid",
        &[&[1, 1, 1, 1, 1], &[0, 1, 0, 1, 2], &[0, 0, 1, 1, 2]],
        b3,
        4,
    )?;
    Ok(())
}
