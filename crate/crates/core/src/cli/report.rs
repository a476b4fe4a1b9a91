//! Serializable report documents emitted by the command line front end.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classify::{Pairings, ReducibilityVerdict, ResonanceReport};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Int};
use crate::gammaseries::{LoopCheck, ResidualReport};
use crate::monodromy::{CharFactor, CharPoly, FacetData, Warning};
use crate::param::ParameterEntry;

pub const SCHEMA: u32 = 1;

pub(crate) fn small(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Inconsistent(format!("integer {x} does not fit in 64 bits")))
}

pub(crate) fn small_vec(v: &[Int]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

pub(crate) fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|j| j + 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        ComplexDoc { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubdivisionReport {
    pub schema: u32,
    pub which: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Maximal cells, 1-based column indices.
    pub cells: Vec<Vec<usize>>,
    pub triangulation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub h: u64,
    pub ell: Vec<i64>,
    pub sign: i8,
    pub mult: u64,
}

impl FactorDoc {
    pub fn from_factor(f: &CharFactor) -> Result<Self> {
        Ok(FactorDoc {
            h: f.height,
            ell: small_vec(&f.ell)?,
            sign: f.sign,
            mult: f.mult,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarningDoc {
    pub kind: String,
    pub facets: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyDoc {
    pub unit_exponent: u64,
    pub factors: Vec<FactorDoc>,
    pub degree: u64,
    pub rendered: String,
    /// Root phases `θ` with roots `e^{2πiθ}`, when `β` is rational.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub roots: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<WarningDoc>,
}

impl CharPolyDoc {
    pub fn from_poly(p: &CharPoly) -> Result<Self> {
        let roots = match crate::monodromy::roots_multiset(p) {
            Ok(r) => Some(r.iter().map(format_rational).collect()),
            Err(Error::NonRationalBeta) => None,
            Err(e) => return Err(e),
        };
        let warnings = p
            .warnings
            .iter()
            .map(|w| {
                let (kind, facets) = match w {
                    Warning::ResonantParameter { facets } => ("resonant-parameter", facets),
                    Warning::NumericUncertain { facets } => ("numeric-uncertain", facets),
                };
                Ok(WarningDoc {
                    kind: kind.into(),
                    facets: facets.iter().map(|f| small_vec(f)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CharPolyDoc {
            unit_exponent: p.unit_exponent,
            factors: p.factors.iter().map(FactorDoc::from_factor).collect::<Result<_>>()?,
            degree: p.degree(),
            rendered: p.to_string(),
            roots,
            warnings,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDoc {
    pub tau: Vec<usize>,
    pub rho: Vec<i64>,
    pub h: u64,
    pub volume: u64,
}

impl FacetDoc {
    pub fn from_facet(f: &FacetData) -> Result<Self> {
        Ok(FacetDoc {
            tau: one_based(&f.tau),
            rho: small_vec(&f.rho)?,
            h: f.height,
            volume: f.volume,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyReport {
    pub schema: u32,
    pub column: usize,
    pub beta: Vec<ParameterEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub local: Option<CharPolyDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub infinity: Option<CharPolyDoc>,
    /// Cells of `T₀` through the column, with conormals and heights.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub facets: Vec<FacetDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub column: usize,
    pub beta: Vec<ParameterEntry>,
    pub seed: u64,
    pub triangulation: Vec<Vec<usize>>,
    pub very_generic: bool,
    pub phases: Vec<String>,
    pub charpoly_roots: Vec<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxDoc {
    pub u: Vec<i64>,
    pub norm: u64,
    pub low_order_max: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub low_order_exact_zero: Option<bool>,
    pub boundary_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_boundary_degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualDoc {
    pub bound: u64,
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub euler_exact_zero: Option<bool>,
    pub euler_max: f64,
    pub boxes: Vec<BoxDoc>,
    pub passes: bool,
}

/// Residuals below this count as zero in complex mode.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

impl From<&ResidualReport> for ResidualDoc {
    fn from(r: &ResidualReport) -> Self {
        ResidualDoc {
            bound: r.bound,
            terms: r.terms,
            euler_exact_zero: r.euler_exact_zero,
            euler_max: r.euler_max,
            boxes: r
                .boxes
                .iter()
                .map(|b| BoxDoc {
                    u: b.u.clone(),
                    norm: b.norm,
                    low_order_max: b.low_order_max,
                    low_order_exact_zero: b.low_order_exact_zero,
                    boundary_terms: b.boundary_terms,
                    min_boundary_degree: b.min_boundary_degree,
                })
                .collect(),
            passes: r.passes(RESIDUAL_TOLERANCE),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopDoc {
    pub column: usize,
    pub radius: f64,
    pub steps: usize,
    pub measured: ComplexDoc,
    pub expected: ComplexDoc,
    pub error: f64,
    pub max_step_jump: f64,
}

impl LoopDoc {
    pub fn new(col: usize, radius: f64, steps: usize, c: &LoopCheck) -> Self {
        LoopDoc {
            column: col + 1,
            radius,
            steps,
            measured: c.measured.into(),
            expected: c.expected.into(),
            error: c.error,
            max_step_jump: c.max_step_jump,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub schema: u32,
    pub which: String,
    pub sigma: Vec<usize>,
    pub k: Vec<u64>,
    pub exponents: Vec<ParameterEntry>,
    pub convergent: bool,
    pub truncation: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<ComplexDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<ResidualDoc>,
    #[serde(rename = "loop", skip_serializing_if = "Option::is_none", default)]
    pub loop_check: Option<LoopDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsDoc {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDoc {
    pub face: Vec<usize>,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema: u32,
    pub verdict: String,
    pub conditions: ConditionsDoc,
    pub f: Vec<usize>,
    pub beta_f: Vec<ParameterEntry>,
    pub nonresonant: bool,
    /// `⟨ν, β⟩` for each facet conormal `ν` of `pos(A)`.
    pub pairings: Vec<ParameterEntry>,
    pub facet_conormals: Vec<Vec<i64>>,
    pub regular_holonomic: bool,
    pub one_dim_decomposition: bool,
    pub invariant_dims: Vec<InvariantDoc>,
    pub numeric_uncertain: bool,
}

impl ClassifyReport {
    pub fn new(v: &ReducibilityVerdict, res: &ResonanceReport, regular: bool) -> Result<Self> {
        let pairings = match &res.pairings {
            Pairings::Exact(p) => p.iter().map(|x| ParameterEntry::Exact(format_rational(x))).collect(),
            Pairings::Numeric(p) => p.iter().map(|z| ParameterEntry::Complex { re: z.re, im: z.im }).collect(),
        };
        Ok(ClassifyReport {
            schema: SCHEMA,
            verdict: if v.reducible { "reducible" } else { "irreducible-rep" }.into(),
            conditions: ConditionsDoc {
                i: v.condition_i,
                ii: v.condition_ii,
                iii: v.condition_iii,
            },
            f: one_based(&v.f),
            beta_f: v.beta_f.to_entries(),
            nonresonant: res.is_nonresonant(),
            pairings,
            facet_conormals: res.facet_conormals.iter().map(|c| small_vec(c)).collect::<Result<_>>()?,
            regular_holonomic: regular,
            one_dim_decomposition: v.one_dim_decomposition,
            invariant_dims: v
                .invariant_dims
                .iter()
                .map(|(face, dim)| InvariantDoc {
                    face: one_based(face),
                    dim: *dim,
                })
                .collect(),
            numeric_uncertain: v.numeric_uncertain,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema: u32,
    pub error: String,
    pub message: String,
    pub exit_code: i32,
}
