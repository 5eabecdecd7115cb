//! Exact linear algebra over [`Scalar`](crate::scalars::Scalar).

mod antilinear;
mod constraints;
mod mat;
mod solve;
mod span;

pub use antilinear::AntilinearOp;
pub use constraints::ConstraintSet;
pub use mat::Mat;
pub use solve::{solve_linear_in_symbols, solve_linear_with_prefix, SolutionSpace};
pub use span::{
    commutant, express_in, express_in_real, nullspace_constant, rank_constant, real_relations, real_span_basis, span_basis, Rref,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
    #[error("operation needs constant entries")]
    NotConstant,
    #[error("cannot tensor a linear with an antilinear operator")]
    MixedLinearity,
    #[error("equation is not linear in the unknowns: {0}")]
    Nonlinear(String),
    #[error("linear system is infeasible")]
    Infeasible,
    #[error("inhomogeneous system with non-constant pivot {0}")]
    NonConstantPivot(String),
}
