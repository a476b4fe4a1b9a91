//! Characteristic polynomials of local monodromy around a coordinate
//! hyperplane and around infinity.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classify::{nonresonant, Resonance};
use crate::error::{Error, Result};
use crate::exact::{
    conormal, dot_int, dot_rat_int, frac_part, inverse, primitive_vector, rank_of_columns, rat_to_f64, Int, Rat,
};
use crate::geometry::{normalized_volume, t_infinity, t_zero, Configuration, Subdivision};
use crate::param::Parameter;

/// Data attached to a maximal cell `τ` through the marked column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    pub tau: Vec<usize>,
    /// `τ ∖ {col}`
    pub face: Vec<usize>,
    /// Primitive covector vanishing on `face`, positive on `a_col`.
    pub rho: Vec<Int>,
    pub height: u64,
    pub volume: u64,
}

/// Primitive multiple of the `col` row of `A_σ⁻¹`.
pub fn rho_from_simplex(cfg: &Configuration, sigma: &[usize], col: usize) -> Result<Vec<Int>> {
    let pos = sigma
        .iter()
        .position(|&j| j == col)
        .ok_or_else(|| Error::Input(format!("column {} not in simplex {sigma:?}", col + 1)))?;
    let inv = inverse(&cfg.submatrix(sigma)).map_err(|_| Error::NotASimplex(sigma.to_vec()))?;
    primitive_vector(inv.row(pos))
}

/// A simplex `σ` with `col ∈ σ ⊆ τ`, chosen greedily in index order.
fn simplex_through(cfg: &Configuration, tau: &[usize], col: usize) -> Option<Vec<usize>> {
    let mut sigma = vec![col];
    for &j in tau {
        if sigma.len() == cfg.dim() {
            break;
        }
        if j == col {
            continue;
        }
        let mut trial = sigma.clone();
        trial.push(j);
        let cols: Vec<&[Int]> = trial.iter().map(|&k| cfg.column(k)).collect();
        if rank_of_columns(&cols) == trial.len() {
            sigma = trial;
        }
    }
    sigma.sort_unstable();
    (sigma.len() == cfg.dim()).then_some(sigma)
}

/// `Σ`: one entry per maximal cell of `sub` containing `col`.
///
/// The conormal is computed from the face and then recomputed from a simplex
/// inside the cell; disagreement is reported as an internal error.
pub fn sigma_set(cfg: &Configuration, sub: &Subdivision, col: usize) -> Result<Vec<FacetData>> {
    cfg.check_column(col)?;
    if !cfg.is_vertex(col) {
        return Err(Error::NotAVertex(col));
    }
    let mut out = Vec::new();
    for cell in sub.maximal_cells() {
        if !cell.indices.contains(&col) {
            continue;
        }
        let tau = cell.indices.clone();
        let face: Vec<usize> = tau.iter().copied().filter(|&j| j != col).collect();
        let cols: Vec<&[Int]> = face.iter().map(|&j| cfg.column(j)).collect();
        let rho = conormal(&cols, cfg.dim(), Some(cfg.column(col)))
            .ok_or_else(|| Error::Inconsistent(format!("face of {tau:?} opposite the marked column is not a hyperplane")))?;
        let sigma = simplex_through(cfg, &tau, col)
            .ok_or_else(|| Error::Inconsistent(format!("no simplex through the marked column in {tau:?}")))?;
        if rho_from_simplex(cfg, &sigma, col)? != rho {
            return Err(Error::Inconsistent(format!("conormal mismatch on {tau:?}")));
        }
        let height = dot_int(&rho, cfg.column(col));
        let volume = normalized_volume(cfg, &tau);
        out.push(FacetData {
            tau,
            face,
            rho,
            height: height.to_u64().expect("small height"),
            volume: volume.to_u64().expect("small volume"),
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// Loop around `x_col = 0`.
    Zero,
    /// Loop around `x_col = ∞`.
    Infinity,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Zero => 1,
            Orientation::Infinity => -1,
        }
    }
}

/// `(z^h − e^{2πi·sign·⟨ℓ,β⟩})^mult`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharFactor {
    pub height: u64,
    pub ell: Vec<Int>,
    pub sign: i8,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Warning {
    /// `β` is resonant; the facet conormals listed pair integrally with it.
    ResonantParameter { facets: Vec<Vec<Int>> },
    /// Complex `β` with a pairing too close to an integer to decide.
    NumericUncertain { facets: Vec<Vec<Int>> },
}

/// A factored characteristic polynomial `(z − 1)^e · Π factors`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    pub unit_exponent: u64,
    pub factors: Vec<CharFactor>,
    pub beta: Parameter,
    pub warnings: Vec<Warning>,
}

impl CharPoly {
    /// Builds the polynomial with equal factors merged, in order of first
    /// appearance.
    pub fn new(unit_exponent: u64, factors: Vec<CharFactor>, beta: Parameter) -> Self {
        let mut merged: Vec<CharFactor> = Vec::new();
        for f in factors {
            match merged
                .iter_mut()
                .find(|m| m.height == f.height && m.ell == f.ell && m.sign == f.sign)
            {
                Some(m) => m.mult += f.mult,
                None => merged.push(f),
            }
        }
        CharPoly {
            unit_exponent,
            factors: merged,
            beta,
            warnings: Vec::new(),
        }
    }

    pub fn degree(&self) -> u64 {
        self.unit_exponent + self.factors.iter().map(|f| f.height * f.mult).sum::<u64>()
    }

    /// Same polynomial, compared without `β` and warnings.
    pub fn same_factors(&self, other: &CharPoly) -> bool {
        let key = |p: &CharPoly| {
            let mut f: Vec<_> = p.factors.iter().map(|f| (f.height, f.ell.clone(), f.sign, f.mult)).collect();
            f.sort();
            f
        };
        self.unit_exponent == other.unit_exponent && key(self) == key(other)
    }
}

fn assemble(cfg: &Configuration, beta: &Parameter, col: usize, sub: &Subdivision, o: Orientation) -> Result<CharPoly> {
    if beta.len() != cfg.dim() {
        return Err(Error::DimensionMismatch(format!(
            "beta has {} entries, A has {} rows",
            beta.len(),
            cfg.dim()
        )));
    }
    let facets = sigma_set(cfg, sub, col)?;
    let all: Vec<usize> = (0..cfg.len()).collect();
    let total = normalized_volume(cfg, &all).to_u64().expect("small volume");
    let used: u64 = facets.iter().map(|f| f.volume).sum();
    let factors = facets
        .into_iter()
        .map(|f| {
            debug_assert_eq!(f.volume % f.height, 0);
            CharFactor {
                height: f.height,
                ell: f.rho,
                sign: o.sign(),
                mult: f.volume / f.height,
            }
        })
        .collect();
    let mut p = CharPoly::new(total - used, factors, beta.clone());
    let report = nonresonant(cfg, beta);
    match report.verdict {
        Resonance::Nonresonant => {}
        Resonance::Resonant(idx) => p.warnings.push(Warning::ResonantParameter {
            facets: idx.iter().map(|&i| report.facet_conormals[i].clone()).collect(),
        }),
        Resonance::NumericUncertain(idx) => p.warnings.push(Warning::NumericUncertain {
            facets: idx.iter().map(|&i| report.facet_conormals[i].clone()).collect(),
        }),
    }
    Ok(p)
}

/// `λ₀` for the column `col`, assembled from the cells of `T₀` through it.
pub fn char_poly_local(cfg: &Configuration, beta: &Parameter, col: usize) -> Result<CharPoly> {
    cfg.check_column(col)?;
    if !cfg.is_vertex(col) {
        return Err(Error::NotAVertex(col));
    }
    assemble(cfg, beta, col, &t_zero(cfg, col)?, Orientation::Zero)
}

/// `λ∞` for the column `col`, assembled from the cells of `T∞` through it.
pub fn char_poly_infinity(cfg: &Configuration, beta: &Parameter, col: usize) -> Result<CharPoly> {
    cfg.check_column(col)?;
    if !cfg.is_vertex(col) {
        return Err(Error::NotAVertex(col));
    }
    assemble(cfg, beta, col, &t_infinity(cfg, col)?, Orientation::Infinity)
}

fn pairing(ell: &[Int], beta: &Parameter) -> Complex64 {
    match beta {
        Parameter::Rational(b) => Complex64::new(rat_to_f64(&dot_rat_int(b, ell)), 0.0),
        Parameter::Complex(b) => ell
            .iter()
            .zip(b)
            .map(|(l, x)| x * l.to_f64().unwrap_or(f64::NAN))
            .sum(),
    }
}

pub fn eval_char_poly(p: &CharPoly, z: Complex64) -> Complex64 {
    let mut out = (z - 1.0).powu(p.unit_exponent as u32);
    for f in &p.factors {
        let phase = pairing(&f.ell, &p.beta) * f64::from(f.sign);
        let c = (Complex64::i() * 2.0 * PI * phase).exp();
        out *= (z.powu(f.height as u32) - c).powu(f.mult as u32);
    }
    out
}

/// Phases `θ ∈ [0,1)` of the roots `e^{2πiθ}`, sorted, with multiplicity.
pub fn roots_multiset(p: &CharPoly) -> Result<Vec<Rat>> {
    let beta = p.beta.require_rational()?;
    let mut out = vec![Rat::zero(); p.unit_exponent as usize];
    for f in &p.factors {
        let base = dot_rat_int(beta, &f.ell) * Rat::from_integer(f.sign.into());
        let h = Rat::from_integer(f.height.into());
        for t in 0..f.height {
            let phase = frac_part(&((&base + Rat::from_integer(t.into())) / &h));
            out.extend(std::iter::repeat(phase).take(f.mult as usize));
        }
    }
    out.sort();
    Ok(out)
}

/// Floating phases for complex `β`; roots are `e^{2πiθ}` with complex `θ`.
pub fn root_phases_numeric(p: &CharPoly) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.unit_exponent as usize];
    for f in &p.factors {
        let base = pairing(&f.ell, &p.beta) * f64::from(f.sign);
        for t in 0..f.height {
            let mut phase = (base + t as f64) / f.height as f64;
            phase.re = phase.re.rem_euclid(1.0);
            out.extend(std::iter::repeat(phase).take(f.mult as usize));
        }
    }
    out
}

/// Renders `ℓ` as a linear form such as `β3 - β1`, positive terms first.
pub fn linear_form(ell: &[Int]) -> String {
    let mut terms: Vec<(usize, &Int)> = ell.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by_key(|(i, c)| (c.is_negative(), *i));
    let mut s = String::new();
    for (i, c) in terms {
        let mag = c.abs();
        let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        s.push_str(&format!("{coeff}β{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.unit_exponent {
            0 => {}
            1 => parts.push("(z-1)".to_string()),
            e => parts.push(format!("(z-1)^{e}")),
        }
        for fac in &self.factors {
            let zpow = if fac.height == 1 { "z".to_string() } else { format!("z^{}", fac.height) };
            let sign = if fac.sign < 0 { "-" } else { "" };
            let form = linear_form(&fac.ell);
            let exponent = if fac.ell.iter().filter(|x| !x.is_zero()).count() == 1 && !form.starts_with('-') {
                format!("{sign}2πi{form}")
            } else {
                format!("{sign}2πi({form})")
            };
            let base = format!("({zpow} - e^{{{exponent}}})");
            parts.push(if fac.mult == 1 { base } else { format!("{base}^{}", fac.mult) });
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(""))
    }
}

/// Helper for tests and examples: `(z^h − e^{2πi·sign·⟨ℓ,β⟩})^mult` from small integers.
pub fn factor(height: u64, ell: &[i64], sign: i8, mult: u64) -> CharFactor {
    CharFactor {
        height,
        ell: ell.iter().map(|&x| Int::from(x)).collect(),
        sign,
        mult,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn example() -> Configuration {
        Configuration::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]]).unwrap()
    }

    fn beta(v: &[(i64, i64)]) -> Parameter {
        Parameter::Rational(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn example_sigma_set() {
        let cfg = example();
        let t0 = t_zero(&cfg, 4).unwrap();
        let s = sigma_set(&cfg, &t0, 4).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].tau, vec![1, 3, 4]);
        assert_eq!(s[0].rho, vec![int(-1), int(1), int(0)]);
        assert_eq!((s[0].height, s[0].volume), (1, 1));
        assert_eq!(s[1].tau, vec![2, 3, 4]);
        assert_eq!(s[1].rho, vec![int(-1), int(0), int(1)]);
        assert_eq!((s[1].height, s[1].volume), (1, 1));
    }

    #[test]
    fn example_local_and_infinity() {
        let cfg = example();
        let b = beta(&[(1, 3), (1, 5), (1, 7)]);
        let l0 = char_poly_local(&cfg, &b, 4).unwrap();
        assert_eq!(l0.unit_exponent, 2);
        assert_eq!(l0.factors, vec![factor(1, &[-1, 1, 0], 1, 1), factor(1, &[-1, 0, 1], 1, 1)]);
        assert!(l0.warnings.is_empty());
        assert_eq!(l0.to_string(), "(z-1)^2(z - e^{2πi(β2 - β1)})(z - e^{2πi(β3 - β1)})");
        let linf = char_poly_infinity(&cfg, &b, 4).unwrap();
        assert_eq!(linf.unit_exponent, 0);
        assert_eq!(linf.factors, vec![factor(2, &[0, 0, 1], -1, 1), factor(2, &[0, 1, 0], -1, 1)]);
        assert_eq!(linf.to_string(), "(z^2 - e^{-2πiβ3})(z^2 - e^{-2πiβ2})");
        assert_eq!(linf.degree(), 4);
    }

    #[test]
    fn triangle_and_segment() {
        let tri = Configuration::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let b = beta(&[(0, 1), (1, 4)]);
        let l0 = char_poly_local(&tri, &b, 1).unwrap();
        assert_eq!(l0.factors, vec![factor(1, &[0, 1], 1, 1)]);
        assert_eq!(roots_multiset(&l0).unwrap(), vec![rat(1, 4)]);
        let linf = char_poly_infinity(&tri, &b, 1).unwrap();
        assert_eq!(linf.factors, vec![factor(1, &[0, 1], -1, 1)]);
        assert_eq!(roots_multiset(&linf).unwrap(), vec![rat(3, 4)]);
        let seg = Configuration::from_rows(&[[1, 2]]).unwrap();
        assert_eq!(
            char_poly_local(&seg, &beta(&[(1, 3)]), 0).unwrap_err(),
            Error::NotAVertex(0)
        );
    }

    #[test]
    fn one_dimensional() {
        let cfg = Configuration::from_rows(&[[1, 2, 3]]).unwrap();
        let b = beta(&[(1, 2)]);
        let facets = sigma_set(&cfg, &t_zero(&cfg, 2).unwrap(), 2).unwrap();
        assert_eq!((facets[0].rho.clone(), facets[0].height, facets[0].volume), (vec![int(1)], 3, 3));
        let l0 = char_poly_local(&cfg, &b, 2).unwrap();
        assert_eq!(l0.unit_exponent, 0);
        assert_eq!(roots_multiset(&l0).unwrap(), vec![rat(1, 6), rat(1, 2), rat(5, 6)]);
    }

    #[test]
    fn evaluation_and_roots() {
        let cfg = example();
        let b = beta(&[(0, 1), (1, 2), (1, 3)]);
        let l0 = char_poly_local(&cfg, &b, 4).unwrap();
        assert!(eval_char_poly(&l0, Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(roots_multiset(&l0).unwrap(), vec![rat(0, 1), rat(0, 1), rat(1, 3), rat(1, 2)]);
        // (z^2 - e^{-πi})^2 has phases 1/4 and 3/4 twice each
        let p = CharPoly::new(0, vec![factor(2, &[0, 0, 1], -1, 2)], beta(&[(0, 1), (0, 1), (1, 2)]));
        assert_eq!(roots_multiset(&p).unwrap(), vec![rat(1, 4), rat(1, 4), rat(3, 4), rat(3, 4)]);
        for z in [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
            assert!(eval_char_poly(&p, z).norm() < 1e-12);
        }
        let unit = CharPoly::new(3, vec![], beta(&[(0, 1)]));
        assert_eq!(roots_multiset(&unit).unwrap(), vec![rat(0, 1); 3]);
        let linf = char_poly_infinity(&cfg, &b, 4).unwrap();
        assert!((eval_char_poly(&linf, Complex64::new(0.0, 0.0)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn resonant_beta_warns() {
        let cfg = example();
        let p = char_poly_local(&cfg, &Parameter::zero(3), 4).unwrap();
        assert!(matches!(p.warnings[0], Warning::ResonantParameter { .. }));
    }

    #[test]
    fn merging_and_order() {
        let p = CharPoly::new(
            0,
            vec![factor(2, &[1, 0], 1, 1), factor(1, &[0, 1], 1, 1), factor(2, &[1, 0], 1, 2)],
            Parameter::zero(2),
        );
        assert_eq!(p.factors, vec![factor(2, &[1, 0], 1, 3), factor(1, &[0, 1], 1, 1)]);
        assert_eq!(linear_form(&[int(2), int(-2), int(1)]), "2β1 + β3 - 2β2");
    }
}
