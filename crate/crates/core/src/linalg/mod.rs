//! Exact dense linear algebra over ℚ(i).

pub mod bareiss;
mod matrix;
mod subspace;

use std::fmt;

pub use matrix::Matrix;
pub use subspace::{combine, kernel_image, Subspace};

use crate::error::{Error, Result};

/// A graded or bigraded piece of an exterior algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Degree(usize),
    Bidegree(i64, i64),
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Degree(k) => write!(f, "A^{k}"),
            Piece::Bidegree(p, q) => write!(f, "A^({p},{q})"),
        }
    }
}

/// A linear map between two pieces in their canonical monomial bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearOperator {
    pub source: Piece,
    pub target: Piece,
    pub matrix: Matrix,
}

impl LinearOperator {
    pub fn new(source: Piece, target: Piece, matrix: Matrix) -> Self {
        LinearOperator { source, target, matrix }
    }

    pub fn zero(source: Piece, target: Piece, src_dim: usize, tgt_dim: usize) -> Self {
        LinearOperator::new(source, target, Matrix::zeros(tgt_dim, src_dim))
    }

    pub fn kernel_image(&self) -> (Subspace, Subspace) {
        kernel_image(&self.matrix)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearOperator) -> Result<LinearOperator> {
        if first.target != self.source {
            return Err(Error::Config(format!(
                "cannot compose {:?}->{:?} after {:?}->{:?}",
                self.source, self.target, first.source, first.target
            )));
        }
        Ok(LinearOperator::new(first.source, self.target, self.matrix.mul(&first.matrix)?))
    }

    pub fn add(&self, o: &LinearOperator) -> Result<LinearOperator> {
        if (self.source, self.target) != (o.source, o.target) {
            return Err(Error::Config("adding operators between different pieces".into()));
        }
        Ok(LinearOperator::new(self.source, self.target, self.matrix.add(&o.matrix)?))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}
