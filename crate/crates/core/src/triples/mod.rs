//! Real (graded) spectral triples, their axiom checkers and products.
//!
//! Checkers return a [`ConstraintSet`] on the symbols of generic algebra
//! elements: an empty set means the condition holds for every element, a
//! nonempty one describes the subfamily on which it holds.

mod algebra;
mod breaking;
mod config;
mod rep;
mod triple;

pub use algebra::{quaternion_block, AlgebraElement, AlgebraSpec, Factor};
pub use breaking::{break_by_commutant, identify_factors, symmetric_branches, BreakReport, BrokenFactor};
pub use config::{FactorDecl, PartConfig, RealStructureConfig, SparseEntries, SymbolDecl, TripleConfig};
pub use rep::{
    EmbedBlock, EmbeddedRep, Embedding, IndexScheme, Placement, PlacementRep, ProjectedPairRep, Rep, Representation, Slot, TensorRep,
};
pub use triple::{
    check_first_order, check_first_order_part, check_first_order_with, check_order_zero, check_order_zero_with, ko_dimension, ko_table,
    manifold_triple, product_triple, unitary_group_dim, validate_triple, KoEntry, RealSpectralTriple, Signs, ValidationReport,
};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{ConstraintSet, LinalgError};
use crate::scalars::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("algebra of smooth functions has an infinite-dimensional unitary group")]
    InfiniteDimensional,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("triple {0} has no grading")]
    MissingGrading(String),
    #[error("bad placement: {0}")]
    BadPlacement(String),
    #[error("unknown operator part {0}")]
    UnknownPart(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    /// An axiom fails for generic elements.
    Fail,
    /// The condition holds only on the subfamily described by the constraints.
    Constrained,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Constrained => "CONSTRAINED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub constraints: ConstraintSet,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    pub fn pass(name: &str) -> Check {
        Check { name: name.into(), status: Status::Pass, constraints: ConstraintSet::empty(), note: String::new() }
    }

    pub fn fail(name: &str, note: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Fail, constraints: ConstraintSet::empty(), note: note.into() }
    }

    /// `Pass` when `c` is empty, `failing` otherwise.
    pub fn from_constraints(name: &str, c: ConstraintSet, failing: Status) -> Check {
        let status = if c.is_satisfied() { Status::Pass } else { failing };
        Check { name: name.into(), status, constraints: c, note: String::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = note.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
