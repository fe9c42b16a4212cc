use thiserror::Error;

/// Errors raised by the structural, folding, fusion and oracle layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra {series}{rank}: {reason}")]
    InvalidAlgebra {
        series: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("node index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),
    #[error("weight {0} is not symmetric under the automorphism")]
    NotSymmetric(String),
    #[error("weight {0} is not in the fractional symmetric weight lattice")]
    NotInFractionalLattice(String),
    #[error("node {index} is not the canonical representative of its orbit")]
    NonCanonicalRepresentative { index: usize },
    #[error("permutation {0:?} does not preserve the Cartan matrix")]
    NotDiagramAutomorphism(Vec<usize>),
    #[error("automorphism not defined for {algebra}: {reason}")]
    UnsupportedAutomorphism { algebra: String, reason: String },
    #[error("weight {weight} is not in {domain} at level {level}")]
    NotInDomain {
        weight: String,
        domain: &'static str,
        level: u32,
    },
    #[error("level must be non-negative, got {0}")]
    NegativeLevel(i64),
    #[error("shifted level must be at least 1")]
    ZeroShiftedLevel,
    #[error("negative fusion coefficient {value} at {target}")]
    NegativeCoefficient { target: String, value: i64 },
    #[error("folding of {0} did not terminate within the iteration cap")]
    FoldDidNotTerminate(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("folded Weyl group exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("twisted S-matrix is not square: {rows} boundary labels vs {cols} symmetric weights")]
    NonSquareSMatrix { rows: usize, cols: usize },
    #[error("oracle residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
