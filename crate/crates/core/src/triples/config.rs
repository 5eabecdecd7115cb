use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraSpec, Factor, IndexScheme, Placement, PlacementRep, RealSpectralTriple, TripleError};
use crate::clifford::OperatorExpr;
use crate::linalg::{AntilinearOp, Mat};
use crate::scalars::{Kind, Scalar, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolDecl {
    pub name: String,
    pub kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDecl {
    pub name: String,
    #[serde(flatten)]
    pub factor: Factor,
}

/// Sparse matrix as `(row, col, scalar text)` triples.
pub type SparseEntries = Vec<(usize, usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartConfig {
    pub name: String,
    pub entries: SparseEntries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealStructureConfig {
    pub entries: SparseEntries,
    #[serde(default = "yes")]
    pub antilinear: bool,
}

fn yes() -> bool {
    true
}

/// Declarative description of a finite real spectral triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleConfig {
    pub name: String,
    #[serde(default)]
    pub symbols: Vec<SymbolDecl>,
    pub factors: Vec<FactorDecl>,
    pub scheme: IndexScheme,
    pub placements: Vec<Placement>,
    #[serde(default)]
    pub parts: Vec<PartConfig>,
    pub real_structure: RealStructureConfig,
    #[serde(default)]
    pub grading: Option<Vec<String>>,
}

impl TripleConfig {
    pub fn from_json(src: &str) -> Result<TripleConfig, TripleError> {
        serde_json::from_str(src).map_err(|e| TripleError::Config(e.to_string()))
    }

    fn declare(&self) -> Result<(), TripleError> {
        for s in &self.symbols {
            Symbol::intern(&s.name, s.kind)?;
        }
        Ok(())
    }

    fn sparse(&self, n: usize, entries: &SparseEntries) -> Result<Mat, TripleError> {
        let mut m = Mat::zeros(n, n);
        for (i, j, text) in entries {
            if *i >= n || *j >= n {
                return Err(TripleError::Config(format!("entry ({i}, {j}) outside {n}×{n}")));
            }
            let v = Scalar::parse(text)?;
            let sum = m.get(*i, *j) + &v;
            m.set(*i, *j, sum);
        }
        Ok(m)
    }

    pub fn build(&self) -> Result<RealSpectralTriple, TripleError> {
        self.declare()?;
        let n = self.scheme.dim();
        let algebra = AlgebraSpec { factors: self.factors.iter().map(|f| (f.name.clone(), f.factor)).collect(), functional: false };
        let rep = PlacementRep::new(n, self.placements.clone());
        rep.validate(&algebra)?;
        let mut parts = Vec::new();
        for p in &self.parts {
            parts.push((p.name.clone(), OperatorExpr::from_mat(self.sparse(n, &p.entries)?)));
        }
        let jm = self.sparse(n, &self.real_structure.entries)?;
        let j = if self.real_structure.antilinear { AntilinearOp::antilinear(jm) } else { AntilinearOp::linear(jm) };
        let grading = match &self.grading {
            None => None,
            Some(d) if d.len() == n => Some(Mat::diag(&d.iter().map(|s| Scalar::parse(s)).collect::<Result<Vec<_>, _>>()?)),
            Some(d) => return Err(TripleError::Config(format!("grading has {} entries, expected {n}", d.len()))),
        };
        let base = RealSpectralTriple {
            name: self.name.clone(),
            algebra,
            rep: Arc::new(rep),
            dirac: OperatorExpr::zero(n),
            parts: Vec::new(),
            j,
            grading,
            scheme: self.scheme.clone(),
        };
        Ok(base.with_parts(parts))
    }

    /// Same configuration with every scalar rewritten canonically and sparse
    /// entries merged and sorted, for golden comparisons.
    pub fn canonical(&self) -> Result<TripleConfig, TripleError> {
        self.declare()?;
        let n = self.scheme.dim();
        let canon = |entries: &SparseEntries| -> Result<SparseEntries, TripleError> {
            let m = self.sparse(n, entries)?;
            Ok(m.entries().map(|(i, j, s)| (i, j, s.to_string())).collect())
        };
        let mut out = self.clone();
        for p in &mut out.parts {
            p.entries = canon(&p.entries)?;
        }
        out.real_structure.entries = canon(&self.real_structure.entries)?;
        if let Some(g) = &mut out.grading {
            for s in g.iter_mut() {
                *s = Scalar::parse(s)?.to_string();
            }
        }
        Ok(out)
    }

    pub fn canonical_json(&self) -> Result<String, TripleError> {
        serde_json::to_string_pretty(&self.canonical()?).map_err(|e| TripleError::Config(e.to_string()))
    }
}
