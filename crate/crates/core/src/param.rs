use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, rat_to_f64, Rat};

/// The parameter vector `β`, exact or floating.
///
/// Exact rational values give exact verdicts and phases; complex values are
/// accepted wherever a numeric answer makes sense and use tolerances.
#[derive(Clone, Debug, PartialEq)]
pub enum Parameter {
    Rational(Vec<Rat>),
    Complex(Vec<Complex64>),
}

impl Parameter {
    pub fn rational(values: Vec<Rat>) -> Self {
        Parameter::Rational(values)
    }

    pub fn zero(d: usize) -> Self {
        Parameter::Rational(vec![Rat::from_integer(0.into()); d])
    }

    /// Parses a comma separated list such as `1/3,1/5,1/7`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Parameter::Rational(values))
    }

    pub fn len(&self) -> usize {
        match self {
            Parameter::Rational(v) => v.len(),
            Parameter::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_rational(&self) -> Option<&[Rat]> {
        match self {
            Parameter::Rational(v) => Some(v),
            Parameter::Complex(_) => None,
        }
    }

    pub fn require_rational(&self) -> Result<&[Rat]> {
        self.as_rational().ok_or(Error::NonRationalBeta)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            Parameter::Rational(v) => v.iter().map(|x| Complex64::new(rat_to_f64(x), 0.0)).collect(),
            Parameter::Complex(v) => v.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Parameter::Rational(_))
    }
}

/// JSON form of one entry: `"p/q"` or `{"re": .., "im": ..}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParameterEntry {
    Exact(String),
    Integer(i64),
    Complex { re: f64, im: f64 },
}

impl Parameter {
    pub fn from_entries(entries: &[ParameterEntry]) -> Result<Self> {
        if entries.iter().any(|e| matches!(e, ParameterEntry::Complex { .. })) {
            let values = entries
                .iter()
                .map(|e| match e {
                    ParameterEntry::Complex { re, im } => Ok(Complex64::new(*re, *im)),
                    ParameterEntry::Exact(s) => Ok(Complex64::new(rat_to_f64(&parse_rational(s)?), 0.0)),
                    ParameterEntry::Integer(i) => Ok(Complex64::new(*i as f64, 0.0)),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Parameter::Complex(values));
        }
        let values = entries
            .iter()
            .map(|e| match e {
                ParameterEntry::Exact(s) => parse_rational(s),
                ParameterEntry::Integer(i) => Ok(Rat::from_integer((*i).into())),
                ParameterEntry::Complex { .. } => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Parameter::Rational(values))
    }

    pub fn to_entries(&self) -> Vec<ParameterEntry> {
        match self {
            Parameter::Rational(v) => v.iter().map(|x| ParameterEntry::Exact(format_rational(x))).collect(),
            Parameter::Complex(v) => v
                .iter()
                .map(|z| ParameterEntry::Complex { re: z.re, im: z.im })
                .collect(),
        }
    }
}
