//! Random corpus shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use hypermono::exact::{int, rat, IntMatrix, Rat};
use hypermono::gammaseries::very_generic;
use hypermono::geometry::{gamma_a, refine_to_triangulation, t_zero, Configuration, Subdivision};
use hypermono::Parameter;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_DIM: usize = 3;
pub const MAX_COLUMNS: usize = 7;
pub const ENTRY_RANGE: i64 = 3;
pub const BETA_DENOMINATOR: i64 = 1009;

/// Draws a pointed configuration with `ZA = Z^d` (after normalization),
/// no zero and no repeated columns.
pub fn random_configuration(rng: &mut ChaCha8Rng) -> Option<Configuration> {
    // d = 1 is rare; spare columns give T₀ room for several refinements
    let d = if rng.gen_bool(0.1) { 1 } else { rng.gen_range(2..=MAX_DIM) };
    let available = (2 * ENTRY_RANGE as usize + 1).pow(d as u32 - 1) * 2 * ENTRY_RANGE as usize;
    let n = rng.gen_range(d + 2..=MAX_COLUMNS.min(available));
    // half the corpus is homogeneous: all points on the hyperplane x₁ = 1
    let homogeneous = d > 1 && rng.gen_bool(0.5);
    let mut cols: Vec<Vec<i64>> = Vec::new();
    while cols.len() < n {
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)).collect();
        if homogeneous {
            c[0] = 1;
        }
        if c.iter().all(|&x| x == 0) || cols.contains(&c) {
            continue;
        }
        cols.push(c);
    }
    let rows: Vec<Vec<i64>> = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let a = IntMatrix::from_rows(&rows).ok()?;
    if a.rank() < d {
        return None;
    }
    let (cfg, _, _) = Configuration::normalized(&a, None).ok()?;
    if !cfg.is_pointed() {
        return None;
    }
    let distinct = {
        let mut c: Vec<_> = cfg.columns().to_vec();
        c.sort();
        c.dedup();
        c.len() == cfg.len()
    };
    distinct.then_some(cfg)
}

pub fn random_beta(rng: &mut ChaCha8Rng, d: usize) -> Parameter {
    let q = BETA_DENOMINATOR;
    Parameter::rational((0..d).map(|_| rat(rng.gen_range(-2 * q..=2 * q), q)).collect())
}

/// A random unimodular matrix built from elementary row operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    if d == 1 {
        if rng.gen_bool(0.5) {
            m.set(0, 0, int(-1));
        }
        return m;
    }
    for _ in 0..4 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        while j == i {
            j = rng.gen_range(0..d);
        }
        let c = rng.gen_range(-2i64..=2);
        for k in 0..d {
            let v = m.get(i, k) + m.get(j, k) * int(c);
            m.set(i, k, v);
        }
        if rng.gen_bool(0.2) {
            for k in 0..d {
                let v = -m.get(i, k).clone();
                m.set(i, k, v);
            }
        }
    }
    m
}

pub fn transform(cfg: &Configuration, u: &IntMatrix, beta: &Parameter) -> (Configuration, Parameter) {
    let moved = Configuration::new(u.mul(cfg.matrix())).expect("unimodular image is a configuration");
    let b: Vec<Rat> = beta.as_rational().expect("rational").to_vec();
    (moved, Parameter::rational(u.mul_rat_vec(&b)))
}

/// One corpus instance: a configuration, a vertex column, a nonresonant very
/// generic parameter, and several triangulations refining `T₀`.
pub struct Instance {
    pub cfg: Configuration,
    pub col: usize,
    pub beta: Parameter,
    pub t0: Subdivision,
    pub triangulations: Vec<Subdivision>,
    /// Triangulations refining `Γ_A` only, for the sign criterion.
    pub gamma_triangulations: Vec<Subdivision>,
}

pub const TRIANGULATIONS_PER_INSTANCE: usize = 3;

fn distinct_triangulations(cfg: &Configuration, base: &Subdivision, seed: u64, want: usize) -> Vec<Subdivision> {
    let mut out: Vec<Subdivision> = Vec::new();
    let mut s = seed;
    let mut tries = 0;
    while tries < 4 * want {
        let t = refine_to_triangulation(cfg, base, s).expect("refinement exists");
        s += 1;
        tries += 1;
        if out.iter().all(|o| o.cell_sets() != t.cell_sets()) {
            out.push(t);
        }
        if out.len() == want {
            break;
        }
    }
    // a base that is already a triangulation has a single refinement
    while out.len() < want {
        out.push(out[0].clone());
    }
    out
}

pub fn build_instance(rng: &mut ChaCha8Rng, seed: u64) -> Option<Instance> {
    let cfg = random_configuration(rng)?;
    let vertices: Vec<usize> = (0..cfg.len()).filter(|&j| cfg.is_vertex(j)).collect();
    let col = *vertices.choose(rng)?;
    let t0 = t_zero(&cfg, col).ok()?;
    let triangulations = distinct_triangulations(&cfg, &t0, seed, TRIANGULATIONS_PER_INSTANCE);
    let gamma = gamma_a(&cfg).ok()?;
    let gamma_triangulations = distinct_triangulations(&cfg, &gamma, seed + 1000, TRIANGULATIONS_PER_INSTANCE);
    for _ in 0..20 {
        let beta = random_beta(rng, cfg.dim());
        if !hypermono::classify::nonresonant(&cfg, &beta).is_nonresonant() {
            continue;
        }
        let generic = triangulations
            .iter()
            .all(|t| very_generic(&cfg, t, &beta).unwrap_or(false));
        if generic {
            return Some(Instance {
                cfg,
                col,
                beta,
                t0,
                triangulations,
                gamma_triangulations,
            });
        }
    }
    None
}

pub fn corpus(size: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempt = 0u64;
    while out.len() < size {
        attempt += 1;
        if let Some(inst) = build_instance(&mut rng, seed.wrapping_mul(7919) + attempt) {
            out.push(inst);
        }
    }
    out
}

/// Configurations `[1; p]` whose marked column is the midpoint of two other
/// points, hence not a vertex of `conv(A ∪ 0)`.
pub fn non_vertex_instance(rng: &mut ChaCha8Rng) -> Option<(Configuration, usize)> {
    let dim = rng.gen_range(1..=2usize);
    let n = rng.gen_range(dim + 2..=6);
    let mut points: Vec<Vec<i64>> = Vec::new();
    while points.len() < n - 1 {
        let p: Vec<i64> = (0..dim).map(|_| rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)).collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| points[i].iter().zip(&points[j]).all(|(a, b)| (a + b) % 2 == 0))
        .collect();
    let &(i, j) = pairs.choose(rng)?;
    let mid: Vec<i64> = points[i].iter().zip(&points[j]).map(|(a, b)| (a + b) / 2).collect();
    if points.contains(&mid) {
        return None;
    }
    let col = rng.gen_range(0..=points.len());
    points.insert(col, mid);
    let mut rows = vec![vec![1i64; points.len()]];
    for k in 0..dim {
        rows.push(points.iter().map(|p| p[k]).collect());
    }
    let a = IntMatrix::from_rows(&rows).ok()?;
    if a.rank() < dim + 1 {
        return None;
    }
    let (cfg, _, _) = Configuration::normalized(&a, None).ok()?;
    (!cfg.is_vertex(col)).then_some((cfg, col))
}
