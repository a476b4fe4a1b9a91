use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{combinations, dot_rat, inverse, inverse_rat, rat_from_int, rref, Rat};

use super::cone::cone_facets;
use super::config::Configuration;
use super::volume::hull_volume;
use super::weight::{unit, LexWeight};

/// A maximal cell of a regular subdivision with its witness covector.
///
/// `witness[ℓ]` pairs with the columns to reproduce layer `ℓ` of the weight
/// on the cell and stays lexicographically below it off the cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub indices: Vec<usize>,
    pub witness: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    cells: Vec<Cell>,
    weight: LexWeight,
}

impl Subdivision {
    pub fn maximal_cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_sets(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.indices.clone()).collect()
    }

    pub fn weight(&self) -> &LexWeight {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Whether every maximal cell has exactly `dim` columns.
    pub fn is_triangulation(&self, dim: usize) -> bool {
        self.cells.iter().all(|c| c.indices.len() == dim)
    }

    /// Attaches witnesses for `weight` to externally constructed cells.
    ///
    /// Fails with `Inconsistent` if some cell is not a maximal cell of the
    /// subdivision induced by `weight`.
    pub fn with_witnesses(cfg: &Configuration, mut sets: Vec<Vec<usize>>, weight: LexWeight) -> Result<Self> {
        let points = cfg.rat_columns();
        let layers = weight.layers();
        sets.iter_mut().for_each(|s| s.sort_unstable());
        sets.sort();
        sets.dedup();
        let mut cells = Vec::with_capacity(sets.len());
        for set in sets {
            let mut rows: Vec<Vec<Rat>> = set.iter().map(|&j| points[j].clone()).collect();
            let basis: Vec<usize> = rref_rows(&mut rows).into_iter().map(|i| set[i]).collect();
            if basis.len() != cfg.dim() {
                return Err(Error::Inconsistent(format!("cell {set:?} is not full-dimensional")));
            }
            let witness = witness_for(points, &basis, layers)
                .ok_or_else(|| Error::Inconsistent(format!("cell {set:?} has a singular basis")))?;
            match cell_of(points, layers, &witness) {
                Some(on) if on == set => cells.push(Cell { indices: set, witness }),
                _ => return Err(Error::Inconsistent(format!("cell {set:?} has no witness"))),
            }
        }
        Ok(Subdivision { cells, weight })
    }
}

/// Indices of linearly independent rows (pivot rows of the transpose).
fn rref_rows(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let width = rows[0].len();
    let mut t: Vec<Vec<Rat>> = (0..width).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect();
    rref(&mut t)
}

/// Solves `c · P_σ = w_σ` layer by layer; `None` if `P_σ` is singular.
fn witness_for(points: &[Vec<Rat>], sigma: &[usize], layers: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let d = sigma.len();
    // rows of M are the points of σ, so c·P_σ = w_σ becomes M c = w_σ
    let m: Vec<Vec<Rat>> = sigma.iter().map(|&j| points[j].clone()).collect();
    let inv = inverse_rat(&m).ok()?;
    Some(
        layers
            .iter()
            .map(|layer| {
                let ws: Vec<Rat> = sigma.iter().map(|&j| layer[j].clone()).collect();
                if ws.iter().all(Zero::is_zero) {
                    vec![Rat::zero(); d]
                } else {
                    inv.mul_rat_vec(&ws)
                }
            })
            .collect(),
    )
}

/// Indices where the witness attains the weight, or `None` if it exceeds the
/// weight somewhere.
fn cell_of(points: &[Vec<Rat>], layers: &[Vec<Rat>], witness: &[Vec<Rat>]) -> Option<Vec<usize>> {
    let mut on = Vec::new();
    for (j, p) in points.iter().enumerate() {
        let mut ord = Ordering::Equal;
        for (c, layer) in witness.iter().zip(layers) {
            ord = dot_rat(c, p).cmp(&layer[j]);
            if ord != Ordering::Equal {
                break;
            }
        }
        match ord {
            Ordering::Greater => return None,
            Ordering::Equal => on.push(j),
            Ordering::Less => {}
        }
    }
    Some(on)
}

/// Full-dimensional cells of the subdivision of `points` induced by the
/// layered weight, found through the simplices they contain.
pub(crate) fn enumerate_cells(
    points: &[Vec<Rat>],
    dim: usize,
    layers: &[Vec<Rat>],
) -> Vec<(Vec<usize>, Vec<Vec<Rat>>)> {
    let mut found: Vec<(Vec<usize>, Vec<Vec<Rat>>)> = Vec::new();
    for sigma in combinations(points.len(), dim) {
        if found
            .iter()
            .any(|(tau, _)| sigma.iter().all(|s| tau.binary_search(s).is_ok()))
        {
            continue;
        }
        let Some(witness) = witness_for(points, &sigma, layers) else {
            continue;
        };
        if let Some(tau) = cell_of(points, layers, &witness) {
            found.push((tau, witness));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found
}

/// The subdivision `T_w` of the configuration induced by a layered weight.
///
/// Needs either a positive leading layer or a pointed configuration; the
/// cells are then checked to cover `pos(A)` by comparing volumes.
pub fn regular_subdivision(cfg: &Configuration, w: &LexWeight) -> Result<Subdivision> {
    if w.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!(
            "weight has {} entries, configuration has {} columns",
            w.len(),
            cfg.len()
        )));
    }
    let points = cfg.rat_columns();
    let layers = w.layers();
    let found = enumerate_cells(points, cfg.dim(), layers);
    let mut cells = Vec::with_capacity(found.len());
    for (indices, witness) in found {
        if cell_of(points, layers, &witness).as_ref() != Some(&indices) {
            return Err(Error::Inconsistent(format!("witness check failed for {indices:?}")));
        }
        cells.push(Cell { indices, witness });
    }
    let sub = Subdivision {
        cells,
        weight: w.clone(),
    };
    check_cover(cfg, &sub)?;
    Ok(sub)
}

/// Scales the columns so that cells become pyramids with apex at the origin
/// whose volumes add up exactly when the cells cover the cone.
fn check_cover(cfg: &Configuration, sub: &Subdivision) -> Result<()> {
    let w = sub.weight();
    let scale: Vec<Rat> = if w.leading_layer_positive() {
        w.layers()[0].clone()
    } else if let Some(f) = cfg.positive_functional() {
        cfg.columns().iter().map(|a| rat_from_int(&crate::exact::dot_int(&f, a))).collect()
    } else {
        return Err(Error::NotACover);
    };
    let scaled: Vec<Vec<Rat>> = cfg
        .rat_columns()
        .iter()
        .zip(&scale)
        .map(|(a, s)| a.iter().map(|x| x / s).collect())
        .collect();
    let pick = |idx: &[usize]| -> Vec<Vec<Rat>> { idx.iter().map(|&j| scaled[j].clone()).collect() };
    let total = hull_volume(&scaled, cfg.dim());
    let covered = sub
        .cells
        .iter()
        .map(|c| hull_volume(&pick(&c.indices), cfg.dim()))
        .fold(Rat::zero(), |a, b| a + b);
    if total != covered {
        return Err(Error::NotACover);
    }
    Ok(())
}

/// `Γ_A`: the subdivision for the constant weight, whose cells are the
/// facets of `conv(A ∪ 0)` away from the origin.
pub fn gamma_a(cfg: &Configuration) -> Result<Subdivision> {
    regular_subdivision(cfg, &LexWeight::constant(cfg.len()))
}

/// `T₀` for the column `col`: the constant weight raised infinitesimally at `col`.
pub fn t_zero(cfg: &Configuration, col: usize) -> Result<Subdivision> {
    cfg.check_column(col)?;
    regular_subdivision(cfg, &LexWeight::omega_zero(cfg.len(), col))
}

/// `T∞` for the column `col`: the constant weight lowered infinitesimally at `col`.
pub fn t_infinity(cfg: &Configuration, col: usize) -> Result<Subdivision> {
    cfg.check_column(col)?;
    regular_subdivision(cfg, &LexWeight::omega_infinity(cfg.len(), col))
}

/// `T₀` built from the cells of `Γ_A` without any lifting.
///
/// If `a_col` is not a vertex it is simply dropped from every cell. Otherwise
/// each cell `τ ∋ col` with `τ' = τ ∖ {col}` full-dimensional is replaced by
/// `τ'` and by `Γ ∪ {col}` for every facet `Γ` of `pos(τ')` visible from
/// `a_col`; a cell where `τ'` is flat is a pyramid with apex `a_col` and is
/// kept whole.
pub fn t_zero_direct(cfg: &Configuration, col: usize) -> Result<Subdivision> {
    cfg.check_column(col)?;
    let gamma = gamma_a(cfg)?;
    let d = cfg.dim();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for tau in gamma.cell_sets() {
        if !tau.contains(&col) {
            sets.push(tau);
            continue;
        }
        let rest: Vec<usize> = tau.iter().copied().filter(|&j| j != col).collect();
        if !cfg.is_vertex(col) {
            sets.push(rest);
            continue;
        }
        let cols: Vec<Vec<_>> = rest.iter().map(|&j| cfg.column(j).to_vec()).collect();
        let refs: Vec<&[_]> = cols.iter().map(Vec::as_slice).collect();
        if crate::exact::rank_of_columns(&refs) < d {
            sets.push(tau);
            continue;
        }
        for facet in cone_facets(&cols, d) {
            if crate::exact::dot_int(&facet.normal, cfg.column(col)).is_negative() {
                let mut cell: Vec<usize> = facet.columns.iter().map(|&i| rest[i]).collect();
                cell.push(col);
                cell.sort_unstable();
                sets.push(cell);
            }
        }
        sets.push(rest);
    }
    sets.sort();
    sets.dedup();
    let maximal: Vec<Vec<usize>> = sets
        .iter()
        .filter(|s| {
            !sets
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok()))
        })
        .cloned()
        .collect();
    Subdivision::with_witnesses(cfg, maximal, LexWeight::omega_zero(cfg.len(), col))
}

/// Number of pseudo-random layers tried before falling back to unit layers.
const RANDOM_LAYERS: usize = 3;
const RANDOM_RANGE: i64 = 16;

/// A regular triangulation refining `base`, obtained by appending seeded
/// random layers to its weight (and unit layers if those are not generic).
pub fn refine_to_triangulation(cfg: &Configuration, base: &Subdivision, seed: u64) -> Result<Subdivision> {
    let d = cfg.dim();
    if base.is_triangulation(d) {
        return Ok(base.clone());
    }
    let n = cfg.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = base.weight().clone();
    for _ in 0..RANDOM_LAYERS {
        let layer = (0..n)
            .map(|_| Rat::from_integer(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE).into()))
            .collect();
        w.push_layer(layer);
    }
    let sub = regular_subdivision(cfg, &w)?;
    if sub.is_triangulation(d) {
        return Ok(sub);
    }
    for j in 0..n {
        w.push_layer(unit(n, j, Rat::one()));
    }
    let sub = regular_subdivision(cfg, &w)?;
    if !sub.is_triangulation(d) {
        return Err(Error::Inconsistent("unit layers did not give a triangulation".into()));
    }
    Ok(sub)
}

/// Whether `fine` refines `coarse`: every fine cell sits inside a coarse
/// cell and the fine cells inside each coarse cell fill it up.
pub fn refines(cfg: &Configuration, fine: &Subdivision, coarse: &Subdivision) -> bool {
    let inside = |s: &[usize], t: &[usize]| s.iter().all(|x| t.binary_search(x).is_ok());
    if !fine
        .cells
        .iter()
        .all(|s| coarse.cells.iter().any(|t| inside(&s.indices, &t.indices)))
    {
        return false;
    }
    let d = cfg.dim();
    coarse.cells.iter().all(|t| {
        let cols: Vec<Vec<_>> = t.indices.iter().map(|&j| cfg.column(j).to_vec()).collect();
        let mut f = vec![crate::exact::Int::zero(); d];
        for facet in cone_facets(&cols, d) {
            for (x, y) in f.iter_mut().zip(&facet.normal) {
                *x += y;
            }
        }
        let heights: Vec<Rat> = cols.iter().map(|a| rat_from_int(&crate::exact::dot_int(&f, a))).collect();
        if heights.iter().any(|h| !h.is_positive()) {
            return false;
        }
        let scaled = |idx: &[usize]| -> Vec<Vec<Rat>> {
            idx.iter()
                .map(|&j| {
                    let k = t.indices.binary_search(&j).expect("inside");
                    cfg.rat_column(j).iter().map(|x| x / &heights[k]).collect()
                })
                .collect()
        };
        let total = hull_volume(&scaled(&t.indices), d);
        let filled = fine
            .cells
            .iter()
            .filter(|s| inside(&s.indices, &t.indices))
            .map(|s| hull_volume(&scaled(&s.indices), d))
            .fold(Rat::zero(), |a, b| a + b);
        total == filled
    })
}

/// For a triangulation refining `Γ_A`: no simplex through `col` has an
/// exterior column on its `Γ_A` facet with positive `col`-coordinate in the
/// simplex basis.
pub fn sign_criterion(cfg: &Configuration, t: &Subdivision, col: usize) -> Result<bool> {
    cfg.check_column(col)?;
    if let Some(c) = t.cells.iter().find(|c| c.indices.len() != cfg.dim()) {
        return Err(Error::NotASimplex(c.indices.clone()));
    }
    if !refines(cfg, t, &gamma_a(cfg)?) {
        return Err(Error::NotRefiningGammaA);
    }
    for cell in &t.cells {
        let Some(pos) = cell.indices.iter().position(|&j| j == col) else {
            continue;
        };
        let inv = inverse(&cfg.submatrix(&cell.indices))?;
        for j in cfg.complement(&cell.indices) {
            let y = inv.mul_int_vec(cfg.column(j));
            let sum = y.iter().fold(Rat::zero(), |a, b| a + b);
            if sum.is_one() && y[pos].is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
