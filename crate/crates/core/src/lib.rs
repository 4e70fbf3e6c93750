//! Exact cohomology of Lie algebras with almost complex structures:
//! de Rham, μ̄- and Dolbeault cohomology, the Frölicher-type spectral
//! sequence, J-invariant cohomology and harmonic theory, all over ℚ(i).

#![allow(clippy::needless_range_loop)]

pub mod acs;
pub mod cohomology;
pub mod commands;
pub mod corpus;
pub mod document;
pub mod error;
pub mod exterior;
pub mod harmonic;
pub mod lie;
pub mod linalg;
pub mod parallel;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use exterior::{Bigrading, ExteriorAlgebra, FormVector, Monomial};
pub use lie::{ce_differential, de_rham, unimodularity, validate_lie_algebra, LieAlgebraSpec};
pub use linalg::{LinearOperator, Matrix, Piece, Subspace};
pub use parallel::Strategy;
pub use scalar::Scalar;
