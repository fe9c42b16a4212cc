//! Twisted fusion rules of untwisted affine Lie algebras.
//!
//! Given a simple Lie algebra `g`, a diagram automorphism `ω` and a level `k`,
//! this crate computes the fusion of an integrable representation `i ∈ P_k^+`
//! with a twisted representation `α ∈ B_k^+` (equivalently the annulus
//! coefficients / NIM-rep `N_{iα}^β`) by a signed folding algorithm over the
//! `ω`-commuting subgroup of the Weyl group, all in exact arithmetic. The
//! [`oracle`] module evaluates the same coefficients independently from the
//! twisted S-matrix in floating point.

pub mod cli;
pub mod error;
pub mod folding;
pub mod fusion;
mod linalg;
pub mod oracle;
pub mod rootdata;
pub mod weight;
pub mod weightsys;

pub use error::{Error, Result};
pub use folding::{Automorphism, AutomorphismKind, SignedFold};
pub use fusion::{FusionCoeffs, NimRepMatrix};
pub use oracle::{NumericCoeff, TwistedSMatrix};
pub use rootdata::{build_algebra, Algebra, AlgebraName, Series};
pub use weight::Weight;
pub use weightsys::WeightSystem;
