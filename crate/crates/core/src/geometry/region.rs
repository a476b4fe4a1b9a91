use num_complex::Complex64;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{inverse, rat_to_f64, Rat};

use super::config::Configuration;

/// Tests the inequalities `|x_j| < R·|x_σ^{A_σ⁻¹a_j}|` for every exterior
/// column whose coordinates in the basis `σ` sum to one.
pub fn u_region_contains(cfg: &Configuration, sigma: &[usize], radius: f64, x: &[Complex64]) -> Result<bool> {
    if x.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", x.len(), cfg.len())));
    }
    let inv = inverse(&cfg.submatrix(sigma)).map_err(|_| Error::NotASimplex(sigma.to_vec()))?;
    for j in cfg.complement(sigma) {
        let b = inv.mul_int_vec(cfg.column(j));
        if !b.iter().fold(Rat::from_integer(0.into()), |a, y| a + y).is_one() {
            continue;
        }
        let mut bound = radius;
        for (&i, bi) in sigma.iter().zip(&b) {
            let m = x[i].norm();
            if m == 0.0 {
                if bi.is_negative() {
                    return Err(Error::IndeterminateAtZero(i));
                }
                if bi.is_positive() {
                    bound = 0.0;
                }
                continue;
            }
            bound *= m.powf(rat_to_f64(bi));
        }
        if x[j].norm() >= bound {
            return Ok(false);
        }
    }
    Ok(true)
}
