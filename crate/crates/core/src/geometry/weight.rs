use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

/// A weight vector with symbolic infinitesimal corrections.
///
/// Layers `w⁽⁰⁾, w⁽¹⁾, …` stand for `w⁽⁰⁾ + ε w⁽¹⁾ + ε² w⁽²⁾ + …` with
/// `ε > 0` infinitesimal, so lifted heights are compared lexicographically
/// layer by layer and no numeric `ε` is ever chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexWeight {
    layers: Vec<Vec<Rat>>,
}

impl LexWeight {
    pub fn new(layers: Vec<Vec<Rat>>) -> Result<Self> {
        let Some(first) = layers.first() else {
            return Err(Error::Input("weight needs at least one layer".into()));
        };
        let n = first.len();
        if layers.iter().any(|l| l.len() != n) {
            return Err(Error::DimensionMismatch("weight layers of unequal length".into()));
        }
        Ok(LexWeight { layers })
    }

    /// `(1, …, 1)`.
    pub fn constant(n: usize) -> Self {
        LexWeight {
            layers: vec![vec![Rat::one(); n]],
        }
    }

    /// `(1, …, 1) + ε e_col`.
    pub fn omega_zero(n: usize, col: usize) -> Self {
        let mut w = Self::constant(n);
        w.push_layer(unit(n, col, Rat::one()));
        w
    }

    /// `(1, …, 1) − ε e_col`.
    pub fn omega_infinity(n: usize, col: usize) -> Self {
        let mut w = Self::constant(n);
        w.push_layer(unit(n, col, -Rat::one()));
        w
    }

    pub fn push_layer(&mut self, layer: Vec<Rat>) {
        assert_eq!(layer.len(), self.len(), "layer length mismatch");
        self.layers.push(layer);
    }

    pub fn layers(&self) -> &[Vec<Rat>] {
        &self.layers
    }

    /// Number of columns weighted.
    pub fn len(&self) -> usize {
        self.layers[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// The layered height of column `j`.
    pub fn value(&self, j: usize) -> Vec<Rat> {
        self.layers.iter().map(|l| l[j].clone()).collect()
    }

    /// Whether the leading layer is strictly positive everywhere.
    pub fn leading_layer_positive(&self) -> bool {
        self.layers[0].iter().all(Signed::is_positive)
    }

    /// Lexicographic positivity of every coordinate.
    pub fn is_positive(&self) -> bool {
        (0..self.len()).all(|j| lex_cmp(&self.value(j), &vec![Rat::zero(); self.depth()]) == Ordering::Greater)
    }
}

pub(crate) fn unit(n: usize, col: usize, value: Rat) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[col] = value;
    v
}

/// Lexicographic comparison of two layered values of equal depth.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}
