//! Parameter classification and the reducibility test for the monodromy
//! representation.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot_rat_int, inverse, rank_of_columns, rank_rat, rat_from_int, smith_normal_form, Int, Rat};
use crate::geometry::{cone_faces, gamma_a, normalized_volume, Configuration};
use crate::param::Parameter;

/// Distance to the nearest integer below which a complex pairing is undecided.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Pairings {
    Exact(Vec<Rat>),
    Numeric(Vec<Complex64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resonance {
    Nonresonant,
    /// Indices into the facet list whose pairing is an integer.
    Resonant(Vec<usize>),
    /// Indices whose pairing is within [`NUMERIC_TOLERANCE`] of an integer.
    NumericUncertain(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceReport {
    pub facet_conormals: Vec<Vec<Int>>,
    pub pairings: Pairings,
    pub verdict: Resonance,
}

impl ResonanceReport {
    pub fn is_nonresonant(&self) -> bool {
        self.verdict == Resonance::Nonresonant
    }
}

/// Decides whether `β + Z^d` meets the boundary of `pos(A)`.
///
/// A boundary point lies on some facet hyperplane `⟨ν,·⟩ = 0`. Since
/// `ZA = Z^d` and `ν` is primitive, `⟨ν, β + Z^d⟩ = ⟨ν,β⟩ + Z`, so some
/// translate lies on the hyperplane iff `⟨ν,β⟩ ∈ Z`. The translates on the
/// hyperplane then form a coset of a rank `d − 1` lattice, which reaches
/// into the facet because the facet is a full-dimensional cone there.
pub fn nonresonant(cfg: &Configuration, beta: &Parameter) -> ResonanceReport {
    let facet_conormals: Vec<Vec<Int>> = cfg.cone_facets().iter().map(|f| f.normal.clone()).collect();
    match beta {
        Parameter::Rational(b) => {
            let pairings: Vec<Rat> = facet_conormals.iter().map(|nu| dot_rat_int(b, nu)).collect();
            let hits: Vec<usize> = (0..pairings.len()).filter(|&i| pairings[i].is_integer()).collect();
            let verdict = if hits.is_empty() {
                Resonance::Nonresonant
            } else {
                Resonance::Resonant(hits)
            };
            ResonanceReport {
                facet_conormals,
                pairings: Pairings::Exact(pairings),
                verdict,
            }
        }
        Parameter::Complex(b) => {
            let pairings: Vec<Complex64> = facet_conormals
                .iter()
                .map(|nu| nu.iter().zip(b).map(|(n, x)| x * n.to_f64().unwrap_or(f64::NAN)).sum())
                .collect();
            let close: Vec<usize> = (0..pairings.len())
                .filter(|&i| {
                    let z = pairings[i];
                    z.im.abs() < NUMERIC_TOLERANCE && (z.re - z.re.round()).abs() < NUMERIC_TOLERANCE
                })
                .collect();
            let verdict = if close.is_empty() {
                Resonance::Nonresonant
            } else {
                Resonance::NumericUncertain(close)
            };
            ResonanceReport {
                facet_conormals,
                pairings: Pairings::Numeric(pairings),
                verdict,
            }
        }
    }
}

/// The smallest face `F` of `pos(A)` (then lexicographically first) with
/// `rank(F) + |F̄| = d`.
pub fn find_f(cfg: &Configuration) -> Vec<usize> {
    let d = cfg.dim();
    let n = cfg.len();
    let mut faces: Vec<Vec<usize>> = cone_faces(cfg.columns(), d)
        .into_iter()
        .filter(|f| face_rank(cfg, f) + (n - f.len()) == d)
        .collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    faces.into_iter().next().unwrap_or_else(|| (0..n).collect())
}

fn face_rank(cfg: &Configuration, f: &[usize]) -> usize {
    let cols: Vec<&[Int]> = f.iter().map(|&j| cfg.column(j)).collect();
    rank_of_columns(&cols)
}

/// Splits `β = β_F + β_F̄` along `span(F) ⊕ span(F̄)`.
pub fn beta_f_decompose(cfg: &Configuration, f: &[usize], beta: &Parameter) -> Result<(Parameter, Parameter)> {
    let d = cfg.dim();
    if beta.len() != d {
        return Err(Error::DimensionMismatch(format!("beta has {} entries, A has {d} rows", beta.len())));
    }
    let complement = cfg.complement(f);
    if face_rank(cfg, f) + complement.len() != d {
        return Err(Error::DegenerateF);
    }
    // independent columns of F, then all of F̄
    let mut basis: Vec<usize> = Vec::new();
    for &j in f {
        let mut trial = basis.clone();
        trial.push(j);
        if face_rank(cfg, &trial) == trial.len() {
            basis = trial;
        }
    }
    let r = basis.len();
    basis.extend(&complement);
    let inv = inverse(&cfg.submatrix(&basis)).map_err(|_| Error::DegenerateF)?;
    match beta {
        Parameter::Rational(b) => {
            let x = inv.mul_rat_vec(b);
            let mut part = vec![Rat::zero(); d];
            for (k, &j) in basis[..r].iter().enumerate() {
                for (p, a) in part.iter_mut().zip(cfg.column(j)) {
                    *p += &x[k] * rat_from_int(a);
                }
            }
            let rest: Vec<Rat> = b.iter().zip(&part).map(|(x, y)| x - y).collect();
            Ok((Parameter::Rational(part), Parameter::Rational(rest)))
        }
        Parameter::Complex(b) => {
            let x: Vec<Complex64> = inv
                .rows()
                .iter()
                .map(|row| row.iter().zip(b).map(|(m, z)| z * crate::exact::rat_to_f64(m)).sum())
                .collect();
            let mut part = vec![Complex64::new(0.0, 0.0); d];
            for (k, &j) in basis[..r].iter().enumerate() {
                for (p, a) in part.iter_mut().zip(cfg.column(j)) {
                    *p += x[k] * a.to_f64().unwrap_or(f64::NAN);
                }
            }
            let rest = b.iter().zip(&part).map(|(x, y)| x - y).collect();
            Ok((Parameter::Complex(part), Parameter::Complex(rest)))
        }
    }
}

/// Whether the row space of `A` contains `(1, …, 1)`.
pub fn regular_holonomic(cfg: &Configuration) -> bool {
    let mut rows = cfg.matrix().to_rat_rows();
    let r = cfg.dim();
    rows.push(vec![Rat::from_integer(1.into()); cfg.len()]);
    rank_rat(rows) == r
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducibilityVerdict {
    pub f: Vec<usize>,
    pub beta_f: Parameter,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    pub reducible: bool,
    /// Every facet of `Γ_A` has at most `d` columns and `β` is nonresonant.
    pub one_dim_decomposition: bool,
    /// Facets of `Γ_A` with their normalized volumes.
    pub invariant_dims: Vec<(Vec<usize>, u64)>,
    /// Some pairing in complex mode was too close to an integer to decide.
    pub numeric_uncertain: bool,
}

/// Evaluates the three reducibility conditions.
///
/// The problem is first reduced to the columns `F` and `β_F`, rewritten in a
/// basis of the lattice `ZF`; all three conditions are read off that reduced
/// configuration. Invariant subspace data is reported for `A` itself.
pub fn reducibility(cfg: &Configuration, beta: &Parameter) -> Result<ReducibilityVerdict> {
    let f = find_f(cfg);
    let (beta_f, _) = beta_f_decompose(cfg, &f, beta)?;
    let mut uncertain = false;

    let (mut cond_i, mut cond_ii, mut cond_iii) = (false, false, false);
    if !f.is_empty() {
        let (sub, sub_beta, _) = Configuration::normalized(&cfg.submatrix(&f), Some(&beta_f))?;
        let sub_beta = sub_beta.expect("beta given");
        match nonresonant(&sub, &sub_beta).verdict {
            Resonance::Nonresonant => {}
            Resonance::Resonant(_) => cond_i = true,
            Resonance::NumericUncertain(_) => uncertain = true,
        }
        let gamma = gamma_a(&sub)?;
        cond_ii = gamma.len() >= 2;
        if let [tau] = gamma.maximal_cells() {
            let snf = smith_normal_form(&sub.submatrix(&tau.indices));
            cond_iii = sub
                .complement(&tau.indices)
                .iter()
                .any(|&i| !snf.lattice_contains(sub.column(i)));
        }
    }

    let gamma = gamma_a(cfg)?;
    let invariant_dims = gamma
        .cell_sets()
        .into_iter()
        .map(|tau| {
            let v = normalized_volume(cfg, &tau).to_u64().expect("small volume");
            (tau, v)
        })
        .collect();
    let full = nonresonant(cfg, beta);
    if matches!(full.verdict, Resonance::NumericUncertain(_)) {
        uncertain = true;
    }
    let one_dim = full.is_nonresonant() && gamma.maximal_cells().iter().all(|c| c.indices.len() <= cfg.dim());

    Ok(ReducibilityVerdict {
        f,
        beta_f,
        condition_i: cond_i,
        condition_ii: cond_ii,
        condition_iii: cond_iii,
        reducible: cond_i || cond_ii || cond_iii,
        one_dim_decomposition: one_dim,
        invariant_dims,
        numeric_uncertain: uncertain,
    })
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
    fn example_resonance() {
        let cfg = example();
        let r = nonresonant(&cfg, &beta(&[(1, 3), (1, 5), (1, 7)]));
        assert!(r.is_nonresonant());
        let normals: std::collections::BTreeSet<Vec<Int>> = r.facet_conormals.iter().cloned().collect();
        assert!(normals.contains(&vec![int(2), int(-2), int(1)]));
        assert_eq!(r.facet_conormals.len(), 4);
        assert!(!nonresonant(&cfg, &Parameter::zero(3)).is_nonresonant());
        // β₂ = 1 alone makes the facet with conormal (0,1,0) resonant
        let r = nonresonant(&cfg, &beta(&[(1, 3), (1, 1), (1, 7)]));
        assert!(matches!(r.verdict, Resonance::Resonant(ref v) if v.len() == 1));
        let c = Parameter::Complex(vec![Complex64::new(0.0, 0.0), Complex64::new(1e-12, 0.0), Complex64::new(0.3, 0.0)]);
        assert!(matches!(nonresonant(&cfg, &c).verdict, Resonance::NumericUncertain(_)));
    }

    #[test]
    fn f_examples() {
        assert_eq!(find_f(&example()), vec![0, 1, 2, 3, 4]);
        let id = Configuration::from_rows(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(find_f(&id), Vec::<usize>::new());
        let seg = Configuration::from_rows(&[[1, 2]]).unwrap();
        assert_eq!(find_f(&seg), vec![0, 1]);
        // a face that is a proper subset: pyramid over a segment
        let pyr = Configuration::from_rows(&[[1, 1, 0], [0, 2, 1]]).unwrap();
        let f = find_f(&pyr);
        assert_eq!(face_rank(&pyr, &f) + pyr.complement(&f).len(), 2);
    }

    #[test]
    fn decomposition() {
        let cfg = example();
        let b = beta(&[(1, 3), (1, 5), (1, 7)]);
        let (bf, rest) = beta_f_decompose(&cfg, &[0, 1, 2, 3, 4], &b).unwrap();
        assert_eq!(bf, b);
        assert_eq!(rest, Parameter::zero(3));
        let id = Configuration::from_rows(&[[1, 0], [0, 1]]).unwrap();
        let b2 = beta(&[(1, 2), (1, 3)]);
        let (bf, rest) = beta_f_decompose(&id, &[], &b2).unwrap();
        assert_eq!(bf, Parameter::zero(2));
        assert_eq!(rest, b2);
        let seg = Configuration::from_rows(&[[1, 2]]).unwrap();
        assert_eq!(beta_f_decompose(&seg, &[], &beta(&[(1, 2)])).unwrap_err(), Error::DegenerateF);
        let (bf, _) = beta_f_decompose(&cfg, &[0, 1, 2, 3, 4], &Parameter::zero(3)).unwrap();
        assert_eq!(bf, Parameter::zero(3));
    }

    #[test]
    fn verdict_table() {
        let seg = Configuration::from_rows(&[[1, 2]]).unwrap();
        let v = reducibility(&seg, &beta(&[(1, 3)])).unwrap();
        assert!(v.reducible && v.condition_iii && !v.condition_i && !v.condition_ii);
        assert!(v.one_dim_decomposition);
        assert_eq!(v.invariant_dims, vec![(vec![1], 2)]);

        let sq = Configuration::from_rows(&[[1, 0, 1], [0, 1, 1]]).unwrap();
        let v = reducibility(&sq, &beta(&[(1, 3), (1, 5)])).unwrap();
        assert!(v.reducible && v.condition_ii && !v.condition_i);
        assert_eq!(v.invariant_dims, vec![(vec![0, 2], 1), (vec![1, 2], 1)]);

        let v = reducibility(&example(), &beta(&[(1, 3), (1, 5), (1, 7)])).unwrap();
        assert!(!v.reducible);
        assert!(!v.one_dim_decomposition);

        let v = reducibility(&example(), &Parameter::zero(3)).unwrap();
        assert!(v.reducible && v.condition_i);
    }

    #[test]
    fn holonomic() {
        assert!(regular_holonomic(&example()));
        assert!(!regular_holonomic(&Configuration::from_rows(&[[1, 2]]).unwrap()));
        assert!(regular_holonomic(&Configuration::from_rows(&[[1, 0], [0, 1]]).unwrap()));
    }
}
