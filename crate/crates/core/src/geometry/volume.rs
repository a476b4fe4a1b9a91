use num_traits::{One, Signed, Zero};

use crate::exact::{rref, Int, Rat};

use super::config::Configuration;
use super::subdivision::enumerate_cells;
use super::weight::unit;

/// `d!` times the Euclidean volume of `conv({a_i : i ∈ τ} ∪ {0})`.
///
/// Zero when the hull is not full-dimensional. Computed as a sum of
/// `|det|` over a lexicographic triangulation of the cells of the hull not
/// containing the origin.
pub fn normalized_volume(cfg: &Configuration, tau: &[usize]) -> Int {
    let points: Vec<Vec<Rat>> = tau.iter().map(|&j| cfg.rat_column(j).to_vec()).collect();
    let v = hull_volume(&points, cfg.dim());
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Normalized volume of `conv(points ∪ {0})` for rational points.
pub(crate) fn hull_volume(points: &[Vec<Rat>], dim: usize) -> Rat {
    if points.len() < dim || rank(points) < dim {
        return Rat::zero();
    }
    if points.len() == dim {
        return det(points).abs();
    }
    let m = points.len();
    let mut layers = vec![vec![Rat::one(); m]];
    layers.extend((0..m).map(|j| unit(m, j, Rat::one())));
    enumerate_cells(points, dim, &layers)
        .into_iter()
        .map(|(cell, _)| {
            let simplex: Vec<Vec<Rat>> = cell.iter().map(|&j| points[j].clone()).collect();
            det(&simplex).abs()
        })
        .fold(Rat::zero(), |a, b| a + b)
}

fn rank(points: &[Vec<Rat>]) -> usize {
    let mut rows = points.to_vec();
    rref(&mut rows).len()
}

/// Determinant of the square matrix whose columns are `points`.
pub(crate) fn det(points: &[Vec<Rat>]) -> Rat {
    let n = points.len();
    let mut m: Vec<Vec<Rat>> = points.to_vec();
    let mut out = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(p, k);
            out = -out;
        }
        let pivot = m[k][k].clone();
        out *= &pivot;
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let sub = &f * &m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    out
}
