use serde::{Deserialize, Serialize};

use super::TripleError;
use crate::clifford::Germ;
use crate::linalg::Mat;
use crate::scalars::{Kind, Scalar, Symbol};

/// A simple summand of a finite-dimensional real *-algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n")]
pub enum Factor {
    /// ℂ
    C,
    /// ℍ, embedded as `[[α, β], [−β̄, ᾱ]]`
    H,
    /// Mₙ(ℂ)
    MC(usize),
    /// Mₙ(ℍ), embedded as a 2n×2n complex matrix of quaternion blocks
    MH(usize),
}

impl Factor {
    /// Size of the complex matrices representing the factor.
    pub fn size(self) -> usize {
        match self {
            Factor::C => 1,
            Factor::H => 2,
            Factor::MC(n) => n,
            Factor::MH(n) => 2 * n,
        }
    }

    /// Real dimension of the Lie algebra of the unitary group.
    pub fn unitary_dim(self) -> usize {
        match self {
            Factor::C => 1,
            Factor::H => 3,
            Factor::MC(n) => n * n,
            Factor::MH(n) => n * (2 * n + 1),
        }
    }

    pub fn label(self) -> String {
        match self {
            Factor::C => "C".into(),
            Factor::H => "H".into(),
            Factor::MC(n) => format!("M{n}(C)"),
            Factor::MH(n) => format!("M{n}(H)"),
        }
    }

    /// Basis of the factor as a real vector space.
    pub fn real_basis(self) -> Vec<Mat> {
        let units = || {
            let (o, i) = (Scalar::one(), Scalar::i());
            let z = Scalar::zero();
            [quaternion_block(&o, &z), quaternion_block(&i, &z), quaternion_block(&z, &o), quaternion_block(&z, &i)]
        };
        match self {
            Factor::C => vec![Mat::identity(1), Mat::identity(1).scale(&Scalar::i())],
            Factor::H => units().to_vec(),
            Factor::MC(n) => {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let mut e = Mat::zeros(n, n);
                        e.set(i, j, Scalar::one());
                        out.push(e.scale(&Scalar::i()));
                        out.insert(out.len() - 1, e);
                    }
                }
                out
            }
            Factor::MH(n) => {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for q in units() {
                            let mut e = Mat::zeros(2 * n, 2 * n);
                            e.set_block(2 * i, 2 * j, &q);
                            out.push(e);
                        }
                    }
                }
                out
            }
        }
    }

    /// Generic value: one fresh complex field symbol per free complex entry.
    pub fn generic(self, prefix: &str) -> Mat {
        let sym = |name: String| Scalar::from(Symbol::field(&name, Kind::Complex).expect("generic symbol clash"));
        match self {
            Factor::C => Mat::from_rows(vec![vec![sym(prefix.to_string())]]),
            Factor::MC(n) => Mat::from_fn(n, n, |i, j| sym(format!("{prefix}{i}{j}"))),
            Factor::H => quaternion_block(&sym(format!("{prefix}α")), &sym(format!("{prefix}β"))),
            Factor::MH(n) => {
                let mut m = Mat::zeros(2 * n, 2 * n);
                for i in 0..n {
                    for j in 0..n {
                        let q = quaternion_block(&sym(format!("{prefix}{i}{j}α")), &sym(format!("{prefix}{i}{j}β")));
                        m.set_block(2 * i, 2 * j, &q);
                    }
                }
                m
            }
        }
    }
}

/// `[[α, β], [−β̄, ᾱ]]`
pub fn quaternion_block(alpha: &Scalar, beta: &Scalar) -> Mat {
    Mat::from_rows(vec![vec![alpha.clone(), beta.clone()], vec![-beta.conj(), alpha.conj()]])
}

/// Ordered list of named factors. `functional` marks algebras of smooth
/// functions valued in the factors (the manifold and almost-commutative case).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub factors: Vec<(String, Factor)>,
    pub functional: bool,
}

impl AlgebraSpec {
    pub fn new(factors: Vec<(&str, Factor)>, functional: bool) -> Self {
        AlgebraSpec { factors: factors.into_iter().map(|(n, f)| (n.to_string(), f)).collect(), functional }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|(n, f)| format!("{}[{n}]", f.label())).collect();
        let inner = parts.join(" + ");
        if self.functional {
            format!("C∞(M, {inner})")
        } else {
            inner
        }
    }

    /// Generic element with symbols `{tag}.{factor}{entry}`.
    pub fn generic(&self, tag: &str) -> AlgebraElement {
        AlgebraElement {
            factors: self
                .factors
                .iter()
                .map(|(name, f)| {
                    let v = f.generic(&format!("{tag}.{name}"));
                    if self.functional {
                        Germ::from_value(v)
                    } else {
                        Germ::constant(v)
                    }
                })
                .collect(),
        }
    }

    /// Symbols of the generic element with this tag (both members of each pair).
    pub fn generic_symbols(&self, tag: &str) -> Vec<Symbol> {
        let g = self.generic(tag);
        let mut out: Vec<Symbol> = Vec::new();
        for f in &g.factors {
            for s in f.value.symbols() {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement { factors: self.factors.iter().map(|(_, f)| Germ::identity(f.size())).collect() }
    }

    pub fn unitary_group_dim(&self) -> Result<usize, TripleError> {
        if self.functional {
            return Err(TripleError::InfiniteDimensional);
        }
        Ok(self.factors.iter().map(|(_, f)| f.unitary_dim()).sum())
    }

    /// Factor-wise doubling `A ⊕ A` used by minimal twists by ℂ²; the second
    /// copy gets primed factor names.
    pub fn doubled(&self) -> AlgebraSpec {
        let mut factors = self.factors.clone();
        factors.extend(self.factors.iter().map(|(n, f)| (format!("{n}′"), *f)));
        AlgebraSpec { factors, functional: self.functional }
    }
}

/// An algebra element: one germ per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub factors: Vec<Germ>,
}

impl AlgebraElement {
    pub fn mul(&self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { factors: self.factors.iter().zip(&o.factors).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { factors: self.factors.iter().zip(&o.factors).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement { factors: self.factors.iter().map(Germ::adjoint).collect() }
    }

    /// `ρ(x)_k = x_{perm[k]}`.
    pub fn permute(&self, perm: &[usize]) -> AlgebraElement {
        AlgebraElement { factors: perm.iter().map(|&k| self.factors[k].clone()).collect() }
    }

    pub fn values_only(&self) -> AlgebraElement {
        AlgebraElement { factors: self.factors.iter().map(|g| Germ::constant(g.value.clone())).collect() }
    }
}
