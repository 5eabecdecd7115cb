use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraElement, AlgebraSpec, TripleError};
use crate::clifford::Germ;
use crate::linalg::Mat;

/// One named tensor slot with value labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub name: String,
    pub labels: Vec<String>,
}

/// Named tensor slots, flattened row-major (first slot slowest).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct IndexScheme {
    pub slots: Vec<Slot>,
}

impl IndexScheme {
    pub fn new(slots: &[(&str, &[&str])]) -> Self {
        IndexScheme {
            slots: slots.iter().map(|(n, l)| Slot { name: n.to_string(), labels: l.iter().map(|s| s.to_string()).collect() }).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.slots.iter().map(|s| s.labels.len()).product()
    }

    pub fn flatten(&self, values: &[usize]) -> usize {
        assert_eq!(values.len(), self.slots.len(), "slot count");
        let mut k = 0;
        for (s, &v) in self.slots.iter().zip(values) {
            assert!(v < s.labels.len(), "slot value out of range");
            k = k * s.labels.len() + v;
        }
        k
    }

    pub fn unflatten(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.slots.len()];
        for (i, s) in self.slots.iter().enumerate().rev() {
            out[i] = k % s.labels.len();
            k /= s.labels.len();
        }
        out
    }

    pub fn slot(&self, name: &str) -> Option<usize> {
        self.slots.iter().position(|s| s.name == name)
    }

    /// Slots of `self` followed by those of `other`.
    pub fn product(&self, other: &IndexScheme) -> IndexScheme {
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().cloned());
        IndexScheme { slots }
    }

    pub fn label(&self, k: usize) -> String {
        let v = self.unflatten(k);
        self.slots.iter().zip(v).map(|(s, x)| format!("{}={}", s.name, s.labels[x])).collect::<Vec<_>>().join(",")
    }

    /// All flat indices whose slot values satisfy `pred`, in increasing order.
    pub fn indices_where(&self, pred: impl Fn(&[usize]) -> bool) -> Vec<usize> {
        (0..self.dim()).filter(|&k| pred(&self.unflatten(k))).collect()
    }
}

/// A *-representation of an algebra on `ℂ^dim`, evaluated on germs.
pub trait Representation: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;
    fn represent(&self, x: &AlgebraElement) -> Germ;
}

pub type Rep = Arc<dyn Representation>;

/// Places the value matrix of factor `factor` (or its entrywise conjugate)
/// at rows/columns `indices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub factor: usize,
    #[serde(default)]
    pub conj: bool,
    pub indices: Vec<usize>,
}

/// Declarative block-placement representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementRep {
    pub dim: usize,
    pub placements: Vec<Placement>,
}

impl PlacementRep {
    pub fn new(dim: usize, placements: Vec<Placement>) -> Self {
        PlacementRep { dim, placements }
    }

    /// Checks factor sizes, index ranges and that placements are disjoint.
    pub fn validate(&self, alg: &AlgebraSpec) -> Result<(), TripleError> {
        let mut used = vec![false; self.dim];
        for p in &self.placements {
            let Some((_, f)) = alg.factors.get(p.factor) else {
                return Err(TripleError::BadPlacement(format!("no factor {}", p.factor)));
            };
            if p.indices.len() != f.size() {
                return Err(TripleError::BadPlacement(format!(
                    "factor {} has size {} but {} indices given",
                    p.factor,
                    f.size(),
                    p.indices.len()
                )));
            }
            for &i in &p.indices {
                if i >= self.dim || used[i] {
                    return Err(TripleError::BadPlacement(format!("index {i} out of range or reused")));
                }
                used[i] = true;
            }
        }
        Ok(())
    }
}

impl Representation for PlacementRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn represent(&self, x: &AlgebraElement) -> Germ {
        let mut out = Germ::zeros(self.dim, self.dim);
        for p in &self.placements {
            let g = &x.factors[p.factor];
            let g = if p.conj { g.conj() } else { g.clone() };
            let place = |dst: &mut Mat, src: &Mat| {
                for (i, j, v) in src.entries() {
                    dst.set(p.indices[i], p.indices[j], v.clone());
                }
            };
            place(&mut out.value, &g.value);
            for mu in 0..4 {
                place(&mut out.grad[mu], &g.grad[mu]);
            }
        }
        out
    }
}

/// `π(x) ⊗ I_k` (finite-major tensor order).
#[derive(Clone, Debug)]
pub struct TensorRep {
    pub inner: Rep,
    pub right: usize,
}

impl Representation for TensorRep {
    fn dim(&self) -> usize {
        self.inner.dim() * self.right
    }

    fn represent(&self, x: &AlgebraElement) -> Germ {
        self.inner.represent(x).kron_right(&Mat::identity(self.right))
    }
}

/// Representation of `A ⊗ ℂ²` on the same space: `P₊π(a) + P₋π(a′)` where the
/// element lists the factors of `a` followed by those of `a′`.
#[derive(Clone, Debug)]
pub struct ProjectedPairRep {
    pub base: Rep,
    pub base_factors: usize,
    pub p_plus: Mat,
    pub p_minus: Mat,
}

impl Representation for ProjectedPairRep {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn represent(&self, x: &AlgebraElement) -> Germ {
        let a = AlgebraElement { factors: x.factors[..self.base_factors].to_vec() };
        let b = AlgebraElement { factors: x.factors[self.base_factors..].to_vec() };
        let pa = self.base.represent(&a);
        let pb = self.base.represent(&b);
        let lp = Germ::constant(self.p_plus.clone());
        let lm = Germ::constant(self.p_minus.clone());
        lp.mul(&pa).add(&lm.mul(&pb))
    }
}

/// One block of an embedded factor: sub-algebra factor `factor`, optionally conjugated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedBlock {
    pub factor: usize,
    #[serde(default)]
    pub conj: bool,
}

/// Unital *-embedding of a sub-algebra: each parent factor is a block
/// diagonal assembled from sub-algebra factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub blocks: Vec<Vec<EmbedBlock>>,
}

impl Embedding {
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            factors: self
                .blocks
                .iter()
                .map(|bs| {
                    let parts: Vec<Germ> =
                        bs.iter().map(|b| if b.conj { x.factors[b.factor].conj() } else { x.factors[b.factor].clone() }).collect();
                    Germ {
                        value: Mat::block_diag(&parts.iter().map(|g| g.value.clone()).collect::<Vec<_>>()),
                        grad: std::array::from_fn(|mu| Mat::block_diag(&parts.iter().map(|g| g.grad[mu].clone()).collect::<Vec<_>>())),
                    }
                })
                .collect(),
        }
    }
}

/// Representation of a sub-algebra through an embedding into a parent.
#[derive(Clone, Debug)]
pub struct EmbeddedRep {
    pub parent: Rep,
    pub embedding: Embedding,
}

impl Representation for EmbeddedRep {
    fn dim(&self) -> usize {
        self.parent.dim()
    }

    fn represent(&self, x: &AlgebraElement) -> Germ {
        self.parent.represent(&self.embedding.apply(x))
    }
}
