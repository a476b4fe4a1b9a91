//! Γ-series attached to the simplices of a triangulation: exponents, coset
//! representatives, numeric evaluation, and the monodromy eigenvalue oracle.

mod rgamma;
mod series;

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{frac_part, inverse, rat_from_int, smith_normal_form, Int, Rat, RatMatrix};
use crate::geometry::{gamma_a, refines, t_infinity, t_zero, Configuration, Subdivision};
use crate::monodromy::Orientation;
use crate::param::Parameter;

pub use rgamma::rgamma;
pub use series::{
    loop_transport_check, operator_residual, truncated_eval, BoxResidual, LoopCheck, ResidualReport,
};

/// Coset representatives `Ω_σ` of `Z^d / ZA_σ` realized as `A_σ̄ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReps {
    pub sigma: Vec<usize>,
    /// Columns outside `σ`, the coordinates of each representative.
    pub complement: Vec<usize>,
    pub reps: Vec<Vec<u64>>,
}

/// Nonnegative integer vectors of length `m` and total degree `t`, in
/// increasing lexicographic order.
pub(crate) fn vectors_of_degree(m: usize, t: u64) -> Vec<Vec<u64>> {
    if m == 0 {
        return if t == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if m == 1 {
        return vec![vec![t]];
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in vectors_of_degree(m - 1, t - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn require_simplex(cfg: &Configuration, sigma: &[usize]) -> Result<RatMatrix> {
    if sigma.len() != cfg.dim() || sigma.windows(2).any(|w| w[0] >= w[1]) || sigma.iter().any(|&j| j >= cfg.len()) {
        return Err(Error::NotASimplex(sigma.to_vec()));
    }
    inverse(&cfg.submatrix(sigma)).map_err(|_| Error::NotASimplex(sigma.to_vec()))
}

fn combine(cfg: &Configuration, cols: &[usize], k: &[u64]) -> Vec<Int> {
    let mut out = vec![Int::zero(); cfg.dim()];
    for (&j, &kj) in cols.iter().zip(k) {
        if kj == 0 {
            continue;
        }
        for (o, a) in out.iter_mut().zip(cfg.column(j)) {
            *o += a * Int::from(kj);
        }
    }
    out
}

/// Breadth-first search over `N^{σ̄}` by degree, keeping the first vector
/// met in each class of `Z^d / ZA_σ`.
pub fn omega_reps(cfg: &Configuration, sigma: &[usize]) -> Result<CosetReps> {
    require_simplex(cfg, sigma)?;
    let a_sigma = cfg.submatrix(sigma);
    let target = a_sigma.det()?.abs().to_u64().expect("small determinant") as usize;
    let snf = smith_normal_form(&a_sigma);
    let complement = cfg.complement(sigma);
    let m = complement.len();
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut reps = Vec::new();
    let bound = (m * target) as u64 + 1;
    'outer: for t in 0..=bound {
        for k in vectors_of_degree(m, t) {
            let label = snf.class_label(&combine(cfg, &complement, &k));
            if seen.insert(label) {
                reps.push(k);
                if reps.len() == target {
                    break 'outer;
                }
            }
        }
    }
    if reps.len() != target {
        return Err(Error::Inconsistent(format!("found {} of {target} classes for {sigma:?}", reps.len())));
    }
    Ok(CosetReps {
        sigma: sigma.to_vec(),
        complement,
        reps,
    })
}

/// Data of one Γ-series `φ_σ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub sigma: Vec<usize>,
    pub complement: Vec<usize>,
    pub k: Vec<u64>,
    /// Exponent vector over all columns; exact whenever `β` is.
    pub v: Parameter,
    pub beta: Parameter,
    /// Whether `σ` lies in a facet of `Γ_A`.
    pub convergent: bool,
}

fn exponent_at(
    cfg: &Configuration,
    inv: &RatMatrix,
    sigma: &[usize],
    complement: &[usize],
    k: &[u64],
    beta: &Parameter,
) -> Parameter {
    let shift = combine(cfg, complement, k);
    match beta {
        Parameter::Rational(b) => {
            let rhs: Vec<Rat> = b.iter().zip(&shift).map(|(x, s)| x - rat_from_int(s)).collect();
            let vs = inv.mul_rat_vec(&rhs);
            let mut v = vec![Rat::zero(); cfg.len()];
            for (&i, x) in sigma.iter().zip(vs) {
                v[i] = x;
            }
            for (&j, &kj) in complement.iter().zip(k) {
                v[j] = Rat::from_integer(kj.into());
            }
            Parameter::Rational(v)
        }
        Parameter::Complex(b) => {
            let rhs: Vec<Complex64> = b
                .iter()
                .zip(&shift)
                .map(|(x, s)| x - s.to_f64().unwrap_or(f64::NAN))
                .collect();
            let mut v = vec![Complex64::new(0.0, 0.0); cfg.len()];
            for (&i, row) in sigma.iter().zip(inv.rows()) {
                v[i] = row
                    .iter()
                    .zip(&rhs)
                    .map(|(m, z)| z * crate::exact::rat_to_f64(m))
                    .sum();
            }
            for (&j, &kj) in complement.iter().zip(k) {
                v[j] = Complex64::new(kj as f64, 0.0);
            }
            Parameter::Complex(v)
        }
    }
}

/// `v_σ^k`: `A v = β` with `v_j = k_j` off `σ`.
pub fn exponent_vector(cfg: &Configuration, sigma: &[usize], k: &[u64], beta: &Parameter) -> Result<SeriesSpec> {
    let inv = require_simplex(cfg, sigma)?;
    let complement = cfg.complement(sigma);
    if k.len() != complement.len() {
        return Err(Error::DimensionMismatch(format!(
            "k has {} entries, σ̄ has {}",
            k.len(),
            complement.len()
        )));
    }
    if beta.len() != cfg.dim() {
        return Err(Error::DimensionMismatch(format!("beta has {} entries, A has {} rows", beta.len(), cfg.dim())));
    }
    let v = exponent_at(cfg, &inv, sigma, &complement, k, beta);
    let gamma = gamma_a(cfg)?;
    let convergent = gamma
        .maximal_cells()
        .iter()
        .any(|c| sigma.iter().all(|s| c.indices.binary_search(s).is_ok()));
    Ok(SeriesSpec {
        sigma: sigma.to_vec(),
        complement,
        k: k.to_vec(),
        v,
        beta: beta.clone(),
        convergent,
    })
}

/// Tolerance for calling a complex coordinate an integer.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-9;

fn near_integer(z: Complex64) -> bool {
    z.im.abs() < INTEGRALITY_TOLERANCE && (z.re - z.re.round()).abs() < INTEGRALITY_TOLERANCE
}

/// No coordinate of `v_σ^k` on `σ` is an integer, for all `σ ∈ T`, `k ∈ Ω_σ`.
///
/// In complex mode a coordinate within [`INTEGRALITY_TOLERANCE`] of an
/// integer counts as an integer.
pub fn very_generic(cfg: &Configuration, t: &Subdivision, beta: &Parameter) -> Result<bool> {
    if beta.len() != cfg.dim() {
        return Err(Error::DimensionMismatch(format!("beta has {} entries, A has {} rows", beta.len(), cfg.dim())));
    }
    for cell in t.maximal_cells() {
        let omega = omega_reps(cfg, &cell.indices)?;
        let inv = require_simplex(cfg, &cell.indices)?;
        for k in &omega.reps {
            let v = exponent_at(cfg, &inv, &cell.indices, &omega.complement, k, beta);
            let hit = match &v {
                Parameter::Rational(v) => cell.indices.iter().any(|&i| v[i].is_integer()),
                Parameter::Complex(v) => cell.indices.iter().any(|&i| near_integer(v[i])),
            };
            if hit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A monodromy phase `θ` standing for the eigenvalue `e^{2πiθ}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Phase {
    Exact(Rat),
    Numeric(Complex64),
}

impl Phase {
    pub fn eigenvalue(&self) -> Complex64 {
        let theta = match self {
            Phase::Exact(r) => Complex64::new(crate::exact::rat_to_f64(r), 0.0),
            Phase::Numeric(z) => *z,
        };
        (Complex64::i() * 2.0 * std::f64::consts::PI * theta).exp()
    }
}

/// `(v_σ^k)_col mod 1`.
pub fn loop_phase(spec: &SeriesSpec, col: usize) -> Phase {
    match &spec.v {
        Parameter::Rational(v) => Phase::Exact(frac_part(&v[col])),
        Parameter::Complex(v) => {
            let mut z = v[col];
            z.re = z.re.rem_euclid(1.0);
            Phase::Numeric(z)
        }
    }
}

/// Phases `(v_σ^k)_col` over `σ ∈ T`, `k ∈ Ω_σ`, sorted; `T` must refine `T₀`.
pub fn eigenvalue_oracle(cfg: &Configuration, beta: &Parameter, col: usize, t: &Subdivision) -> Result<Vec<Rat>> {
    eigenvalue_oracle_at(cfg, beta, col, t, Orientation::Zero)
}

/// As [`eigenvalue_oracle`], for either loop. Around infinity the loop runs
/// the other way, so phases change sign and `T` must refine `T∞`.
pub fn eigenvalue_oracle_at(
    cfg: &Configuration,
    beta: &Parameter,
    col: usize,
    t: &Subdivision,
    orientation: Orientation,
) -> Result<Vec<Rat>> {
    cfg.check_column(col)?;
    beta.require_rational()?;
    if beta.len() != cfg.dim() {
        return Err(Error::DimensionMismatch(format!("beta has {} entries, A has {} rows", beta.len(), cfg.dim())));
    }
    if let Some(c) = t.maximal_cells().iter().find(|c| c.indices.len() != cfg.dim()) {
        return Err(Error::NotASimplex(c.indices.clone()));
    }
    match orientation {
        Orientation::Zero => {
            if !refines(cfg, t, &t_zero(cfg, col)?) {
                return Err(Error::NotRefiningT0);
            }
        }
        Orientation::Infinity => {
            if !refines(cfg, t, &t_infinity(cfg, col)?) {
                return Err(Error::NotRefiningTInfinity);
            }
        }
    }
    let sign = Rat::from_integer(orientation.sign().into());
    let mut out = Vec::new();
    for cell in t.maximal_cells() {
        let omega = omega_reps(cfg, &cell.indices)?;
        let inv = require_simplex(cfg, &cell.indices)?;
        for k in &omega.reps {
            match exponent_at(cfg, &inv, &cell.indices, &omega.complement, k, beta) {
                Parameter::Rational(v) => out.push(frac_part(&(&v[col] * &sign))),
                Parameter::Complex(_) => return Err(Error::NonRationalBeta),
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::geometry::{refine_to_triangulation, Subdivision};

    fn example() -> Configuration {
        Configuration::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]]).unwrap()
    }

    fn beta(v: &[(i64, i64)]) -> Parameter {
        Parameter::Rational(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn degree_vectors() {
        assert_eq!(vectors_of_degree(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(vectors_of_degree(0, 0), vec![Vec::<u64>::new()]);
        assert_eq!(vectors_of_degree(3, 1).len(), 3);
    }

    #[test]
    fn omega_examples() {
        let cfg = example();
        assert_eq!(omega_reps(&cfg, &[1, 3, 4]).unwrap().reps, vec![vec![0, 0]]);
        let om = omega_reps(&cfg, &[0, 1, 4]).unwrap();
        assert_eq!(om.complement, vec![2, 3]);
        assert_eq!(om.reps, vec![vec![0, 0], vec![0, 1]]);
        let small = Configuration::from_rows(&[[1, 0, 1], [0, 2, 1]]).unwrap();
        let om = omega_reps(&small, &[0, 1]).unwrap();
        assert_eq!(om.reps, vec![vec![0], vec![1]]);
        assert!(omega_reps(&cfg, &[1, 3]).is_err());
        assert_eq!(omega_reps(&cfg, &[0, 3, 4]).unwrap_err(), Error::NotASimplex(vec![0, 3, 4]));
    }

    #[test]
    fn exponents() {
        let cfg = example();
        let b = beta(&[(1, 3), (1, 5), (1, 7)]);
        let s = exponent_vector(&cfg, &[1, 3, 4], &[0, 0], &b).unwrap();
        let Parameter::Rational(v) = &s.v else { panic!() };
        assert_eq!(v[4], rat(1, 5) - rat(1, 3));
        assert!(s.convergent);
        let s = exponent_vector(&cfg, &[2, 3, 4], &[0, 0], &b).unwrap();
        assert_eq!(loop_phase(&s, 4), Phase::Exact(frac_part(&(rat(1, 7) - rat(1, 3)))));
        assert_eq!(loop_phase(&s, 0), Phase::Exact(rat(0, 1)));
        let z = exponent_vector(&cfg, &[1, 3, 4], &[0, 0], &Parameter::zero(3)).unwrap();
        assert_eq!(z.v, Parameter::zero(5));
        // a simplex off Γ_A gives a divergent series
        let seg = Configuration::from_rows(&[[1, 2]]).unwrap();
        assert!(!exponent_vector(&seg, &[0], &[0], &beta(&[(1, 3)])).unwrap().convergent);
    }

    #[test]
    fn generic_parameters() {
        let cfg = example();
        let t0 = t_zero(&cfg, 4).unwrap();
        let t = refine_to_triangulation(&cfg, &t0, 7).unwrap();
        assert!(very_generic(&cfg, &t, &beta(&[(1, 3), (1, 5), (1, 7)])).unwrap());
        assert!(!very_generic(&cfg, &t, &Parameter::zero(3)).unwrap());
        assert!(!very_generic(&cfg, &t, &beta(&[(1, 3), (4, 3), (1, 7)])).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let cfg = example();
        let t = Subdivision::with_witnesses(
            &cfg,
            vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 3, 4], vec![2, 3, 4]],
            {
                let mut w = crate::geometry::LexWeight::omega_zero(5, 4);
                w.push_layer(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1)]);
                w
            },
        )
        .unwrap();
        let b = beta(&[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(
            eigenvalue_oracle(&cfg, &b, 4, &t).unwrap(),
            vec![rat(0, 1), rat(0, 1), rat(1, 3), rat(1, 2)]
        );
        let tri = Configuration::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let t = t_zero(&tri, 1).unwrap();
        assert_eq!(eigenvalue_oracle(&tri, &beta(&[(0, 1), (1, 4)]), 1, &t).unwrap(), vec![rat(1, 4)]);
        let tinf = t_infinity(&cfg, 4).unwrap();
        assert_eq!(eigenvalue_oracle(&cfg, &b, 4, &tinf).unwrap_err(), Error::NotRefiningT0);
        let zero = eigenvalue_oracle_at(&cfg, &Parameter::zero(3), 4, &tinf, Orientation::Infinity).unwrap();
        assert_eq!(zero, vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]);
    }
}
