//! Report types. Field order is the serialization order, and every list is
//! produced in a fixed order, so identical inputs give byte-identical output.

use ncg_core::actions::Subspace;
use ncg_core::clifford::{OperatorExpr, GAMMA_BASIS_NAME};
use ncg_core::fluctuations::Adjointness;
use ncg_core::linalg::Mat;
use ncg_core::scalars::{Scalar, Symbol};
use ncg_core::triples::{Check, Signs, Status};
use serde::Serialize;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: &'static str,
    pub gamma_basis: &'static str,
    pub command: &'static str,
    /// Every status matched the model's manifest.
    pub expectations_met: bool,
    pub result: Body,
}

impl Report {
    pub fn new(command: &'static str, result: Body) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            engine_version: ncg_core::VERSION,
            gamma_basis: GAMMA_BASIS_NAME,
            command,
            expectations_met: result.expectations_met(),
            result,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Models { models: Vec<ModelEntry> },
    Check(CheckBody),
    Fluctuate(FluctuateBody),
    Action(ActionBody),
}

impl Body {
    fn expectations_met(&self) -> bool {
        match self {
            Body::Models { .. } | Body::Fluctuate(_) => true,
            Body::Check(c) => c.checks.iter().all(|k| k.check.status == k.expected),
            Body::Action(a) => a.antisymmetric && a.matched == a.expected_match,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ModelEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub twisted: bool,
    pub blocks: Vec<&'static str>,
    /// Checks that are expected not to pass.
    pub expected: Vec<ExpectedStatus>,
}

#[derive(Debug, Serialize)]
pub struct ExpectedStatus {
    pub check: &'static str,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct CheckBody {
    pub model: String,
    pub generations: usize,
    pub twist: Option<String>,
    pub part: String,
    pub dim: usize,
    pub ko_dimension: Option<u8>,
    pub signs: Signs,
    pub checks: Vec<CheckLine>,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    #[serde(flatten)]
    pub check: Check,
    pub expected: Status,
}

#[derive(Debug, Serialize)]
pub struct FluctuateBody {
    pub model: String,
    pub generations: usize,
    pub product: Adjointness,
    pub part: String,
    pub one_form_dim: usize,
    /// `D` commutes with the algebra up to the twist: no one-form survives.
    pub transparent: bool,
    pub params: Vec<Symbol>,
    pub directions: Vec<Direction>,
}

/// Nonzero entries of the operator multiplying one parameter.
#[derive(Debug, Serialize)]
pub struct Direction {
    pub param: Symbol,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

pub fn entries(m: &Mat) -> Vec<Entry> {
    m.entries().map(|(row, col, value)| Entry { row, col, value: value.clone() }).collect()
}

#[derive(Debug, Serialize)]
pub struct ActionBody {
    pub model: String,
    pub template: &'static str,
    pub planewave: Scalar,
    pub subspace: Subspace,
    pub identification: String,
    pub prefactor: Scalar,
    pub bindings: Vec<(Symbol, Scalar)>,
    pub antisymmetric: bool,
    pub matched: bool,
    pub expected_match: bool,
    /// Kernel on the subspace before antisymmetrization.
    pub kernel: OperatorExpr,
    pub residual: OperatorExpr,
}
