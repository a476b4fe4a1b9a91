use thiserror::Error;

/// Errors raised by the computations in this crate.
///
/// Variants hold 0-based column indices; messages print them 1-based.
/// Variants are grouped loosely by the layer that raises them. The CLI maps
/// them to exit codes through [`Error::is_hypothesis_failure`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("ZA is not Z^d (Smith diagonal {diag:?}, rank {rank} of {rows}); use lattice normalization")]
    LatticeIndex {
        diag: Vec<String>,
        rank: usize,
        rows: usize,
    },
    #[error("column index {} out of range", .0 + 1)]
    ColumnOutOfRange(usize),
    #[error("weight does not induce a subdivision covering pos(A)")]
    NotACover,
    #[error("column {} is not a vertex of the polytope conv(A ∪ 0)", .0 + 1)]
    NotAVertex(usize),
    #[error("triangulation does not refine Γ_A")]
    NotRefiningGammaA,
    #[error("triangulation does not refine T0")]
    NotRefiningT0,
    #[error("triangulation does not refine T∞")]
    NotRefiningTInfinity,
    #[error("index set {:?} is not a simplex", one_based(.0))]
    NotASimplex(Vec<usize>),
    #[error("monomial is indeterminate: coordinate {} vanishes with a negative exponent", .0 + 1)]
    IndeterminateAtZero(usize),

    #[error("Γ-series for simplex {:?} does not converge (simplex not inside a facet of Γ_A)", one_based(.0))]
    DivergentSeries(Vec<usize>),
    #[error("branch of x_{}^c undefined at x_{} = 0", .0 + 1, .0 + 1)]
    BranchUndefined(usize),
    #[error("parameter vector is not rational")]
    NonRationalBeta,

    #[error("F does not satisfy dim ZF + |F̄| = d")]
    DegenerateF,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    /// True for failures of a theorem hypothesis (as opposed to malformed input).
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotAVertex(_)
                | Error::NotRefiningGammaA
                | Error::NotRefiningT0
                | Error::NotRefiningTInfinity
                | Error::DivergentSeries(_)
                | Error::BranchUndefined(_)
                | Error::IndeterminateAtZero(_)
                | Error::NotACover
                | Error::DegenerateF
        )
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|j| j + 1).collect()
}

pub type Result<T> = std::result::Result<T, Error>;
