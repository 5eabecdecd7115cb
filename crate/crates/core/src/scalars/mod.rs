//! Exact scalars: Gaussian rationals extended by commuting symbols.

mod coeff;
mod parse;
mod poly;
mod symbol;

pub use coeff::GaussRat;
pub use poly::{Monomial, Scalar};
pub use symbol::{Kind, Symbol, CONJ_MARK};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("symbol `{0}` already exists")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` exists with a different kind")]
    KindMismatch(String),
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("binding for `{0}` violates its reality condition")]
    RealityViolation(String),
    #[error("parse error in `{input}` at {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Scalar::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Convenience: scalar from a symbol with the given name, interning it.
pub fn sym(name: &str, kind: Kind) -> Scalar {
    Scalar::from(Symbol::intern(name, kind).expect("symbol kind clash"))
}
