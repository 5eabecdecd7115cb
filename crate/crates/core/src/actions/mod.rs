//! Fermionic-action kernels and Lorentzian Lagrangian templates.
//!
//! Grassmann variables are not modelled. The action `𝔗(ξ̃, ξ̃)` is
//! represented by its kernel `K` with `𝔗(ξ, ξ′) = ξᵀ K ξ′` on a basis of
//! the relevant subspace; only the antisymmetrized kernel survives the
//! Grassmann pairing, so comparisons are made between antisymmetrizations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{pauli, OperatorExpr};
use crate::linalg::Mat;
use crate::models::{hplus_basis, hr_basis, Model, ModelError};
use crate::scalars::{Kind, Scalar, ScalarError, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("the basis does not lie in the {0} subspace")]
    NotInvariant(&'static str),
    #[error("model {0} has no twisting unitary R")]
    Untwisted(String),
    #[error("kernel is {kernel:?} but the identification expects {expected:?}")]
    Shape { kernel: (usize, usize), expected: (usize, usize) },
    #[error("no {template} identification for model {model}")]
    NoIdentification { model: String, template: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Subspace on which the action is evaluated: the `+1` eigenspace of `R`
/// (twisted case) or of the grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subspace {
    Hr,
    Hplus,
}

impl Subspace {
    pub fn label(self) -> &'static str {
        match self {
            Subspace::Hr => "H_r",
            Subspace::Hplus => "H+",
        }
    }
}

/// `𝔗(ξ, ξ′) = ξᵀ K ξ′` for `ξ = V z`, with `∂` acting to the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelMatrix {
    pub subspace: Subspace,
    /// Columns spanning the subspace (not normalized).
    pub basis: Mat,
    pub kernel: OperatorExpr,
}

/// `(K − Kᵀ)/2` with the formal transpose.
pub fn antisymmetrize(k: &OperatorExpr) -> OperatorExpr {
    k.sub(&k.transpose_formal()).scale(&Scalar::from_ratio(1, 2))
}

impl KernelMatrix {
    pub fn antisymmetrized(&self) -> OperatorExpr {
        antisymmetrize(&self.kernel)
    }

    /// `Kᵀ = −K` exactly.
    pub fn is_antisymmetric(&self) -> bool {
        self.kernel.transpose_formal() == self.kernel.neg()
    }

    pub fn substitute(&self, b: &HashMap<Symbol, Scalar>) -> Result<KernelMatrix, ActionError> {
        Ok(KernelMatrix { kernel: self.kernel.substitute(b)?, ..self.clone() })
    }
}

/// Kernel `Vᵀ·J_M†·R·D·V` of `⟨Jξ, R D ξ′⟩`, where `J = J_M ∘ conj`; `R` is
/// dropped for untwisted models.
pub fn fermionic_kernel(model: &Model, d: &OperatorExpr, subspace: Subspace) -> Result<KernelMatrix, ActionError> {
    let base = model.base();
    let n = base.dim();
    let v = match subspace {
        Subspace::Hr => {
            let t = model.twisted().ok_or_else(|| ActionError::Untwisted(base.name.clone()))?;
            let v = hr_basis(n);
            if &t.r * &v != v {
                return Err(ActionError::NotInvariant("H_r"));
            }
            v
        }
        Subspace::Hplus => {
            let g = base.grading.as_ref().ok_or_else(|| ModelError::Ungraded(base.name.clone()))?;
            let v = hplus_basis(g)?;
            if g * &v != v {
                return Err(ActionError::NotInvariant("H+"));
            }
            v
        }
    };
    let mut left = &v.transpose() * &base.j.matrix.adjoint();
    if let (Some(t), Subspace::Hr) = (model.twisted(), subspace) {
        left = &left * &t.r;
    }
    let kernel = d.map(|m| &(&left * m) * &v);
    Ok(KernelMatrix { subspace, basis: v, kernel })
}

/// `∂₀ ↦ i·f0`, for a plane wave of energy `f0` (other `∂_j` untouched).
pub fn plane_wave_substitute(k: &KernelMatrix, f0: &Scalar) -> KernelMatrix {
    KernelMatrix { kernel: k.kernel.plane_wave(0, f0), ..k.clone() }
}

/// Lorentzian Lagrangians `ψ† W ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Template {
    /// `i ψ_l† σ̃^μ ∂_μ ψ_l` with `σ̃ = (I, −σ_j)`.
    Weyl,
    /// `i ψ_r† σ^μ ∂_μ ψ_r` with `σ = (I, σ_j)`.
    WeylRight,
    /// `i ψ_l† σ̃^μ 𝒟_μ ψ_l + i ψ_r† σ^μ 𝒟_μ ψ_r − m(ψ_l†ψ_r + ψ_r†ψ_l)`,
    /// `𝒟_μ = ∂_μ − i g_μ`, temporal gauge `𝒟₀ = ∂₀`.
    Dirac,
}

impl Template {
    pub fn name(self) -> &'static str {
        match self {
            Template::Weyl => "weyl",
            Template::WeylRight => "weyl-right",
            Template::Dirac => "dirac",
        }
    }
}

/// `(I, s·σ_j)`.
fn sigma_m(sign: i64) -> [Mat; 4] {
    let p = pauli();
    let s = Scalar::from_int(sign);
    [Mat::identity(2), p[0].scale(&s), p[1].scale(&s), p[2].scale(&s)]
}

fn field(name: &str) -> Result<Scalar, ScalarError> {
    Ok(Scalar::from(Symbol::field(name, Kind::Real)?))
}

/// Kernel `W` of the template on the physical spinor slots.
pub fn template_kernel(t: Template) -> Result<OperatorExpr, ActionError> {
    let i = Scalar::i();
    let weyl = |sign: i64| {
        let s = sigma_m(sign);
        OperatorExpr::new(Mat::zeros(2, 2), std::array::from_fn(|mu| s[mu].scale(&i)))
    };
    Ok(match t {
        Template::Weyl => weyl(-1),
        Template::WeylRight => weyl(1),
        Template::Dirac => {
            let (l, r) = (sigma_m(-1), sigma_m(1));
            let blocks: [Mat; 4] = std::array::from_fn(|mu| Mat::block_diag(&[l[mu].clone(), r[mu].clone()]).scale(&i));
            let m = Scalar::from(Symbol::intern("m", Kind::Real)?);
            let mut c = Mat::zeros(4, 4);
            c.set_block(0, 2, &Mat::identity(2).scale(&-&m));
            c.set_block(2, 0, &Mat::identity(2).scale(&-&m));
            for (mu, b) in blocks.iter().enumerate().skip(1) {
                // i σ (−i g_μ) = σ g_μ
                c = &c + &b.scale(&(-&i * field(&format!("g{mu}"))?));
            }
            OperatorExpr::new(c, blocks)
        }
    })
}

/// Physical spinors in terms of the kernel coordinates `z`: `ψ = L z` and
/// `ψ† = zᵀ M`, together with the stated normalization and the
/// specializations applied to the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub description: String,
    pub psi: Mat,
    pub psi_dagger: Mat,
    pub prefactor: Scalar,
    pub bindings: Vec<(Symbol, Scalar)>,
}

impl Identification {
    /// Template kernel pulled back to the kernel coordinates: `M W L`.
    pub fn pullback(&self, w: &OperatorExpr) -> OperatorExpr {
        w.map(|x| &(&self.psi_dagger * x) * &self.psi)
    }
}

/// `−iσ₂·s` placed at rows `row` and columns `col` of an `n × slots` matrix.
fn sigma2_block(m: &mut Mat, row: usize, col: usize, s: i64) {
    let b = pauli()[1].scale(&(Scalar::i() * Scalar::from_int(-s)));
    m.set_block(row, col, &b);
}

fn select_slots(n: usize, slots: usize, offset: usize) -> Mat {
    let mut l = Mat::zeros(slots, n);
    for k in 0..slots {
        l.set(k, offset + k, Scalar::one());
    }
    l
}

/// Identifications for the models with a Lorentzian reading of the action.
pub fn identification(model: &str, t: Template) -> Result<Identification, ActionError> {
    let none = || ActionError::NoIdentification { model: model.into(), template: t.name().into() };
    match (model, t) {
        ("manifold-twist", Template::Weyl | Template::WeylRight) => Ok(Identification {
            description: "ψ := ζ̃, ψ† := ζ̃ᵀ (a single Weyl spinor and its adjoint)".into(),
            psi: select_slots(2, 2, 0),
            psi_dagger: select_slots(2, 2, 0).transpose(),
            prefactor: Scalar::from_int(2),
            bindings: Vec::new(),
        }),
        ("doubled-manifold", Template::Weyl | Template::WeylRight) => {
            let mut md = Mat::zeros(4, 2);
            sigma2_block(&mut md, 2, 0, 1);
            let bindings =
                (0..4).map(|mu| Ok((Symbol::field(&format!("g{mu}"), Kind::Real)?, Scalar::zero()))).collect::<Result<_, ScalarError>>()?;
            Ok(Identification {
                description: "ψ := ζ̃, ψ† := −i φ̄̃†σ₂, g_μ = 0".into(),
                psi: select_slots(4, 2, 0),
                psi_dagger: md,
                prefactor: Scalar::from_int(4),
                bindings,
            })
        }
        ("ed", Template::Dirac) => {
            let mut md = Mat::zeros(8, 4);
            sigma2_block(&mut md, 4, 0, 1);
            sigma2_block(&mut md, 6, 2, -1);
            let d = Symbol::lookup("d").ok_or_else(none)?;
            let m = Scalar::from(Symbol::intern("m", Kind::Real)?);
            let mi = -Scalar::i() * &m;
            Ok(Identification {
                description: "ψ := (ζ̃₁, ζ̃₂), ψ† := (−i φ̄̃₁†σ₂, i φ̄̃₂†σ₂), d = −im".into(),
                psi: select_slots(8, 4, 0),
                psi_dagger: md,
                prefactor: Scalar::from_int(4),
                bindings: vec![(d, mi.clone()), (d.conj(), mi.conj())],
            })
        }
        _ => Err(none()),
    }
}

/// Outcome of a template comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub matched: bool,
    /// Antisymmetrized kernel minus the scaled antisymmetrized template, after
    /// the plane-wave substitution on both.
    pub residual: OperatorExpr,
}

/// Compares `K` with `prefactor · (M W L)` after specializing `K`, sending
/// `∂₀ ↦ i f0` in both and antisymmetrizing both.
pub fn match_template(k: &KernelMatrix, t: Template, id: &Identification, f0: &Scalar) -> Result<MatchResult, ActionError> {
    let w = template_kernel(t)?;
    let expected = (id.psi_dagger.rows(), id.psi.cols());
    if k.kernel.shape() != expected || id.psi.rows() != w.dim() {
        return Err(ActionError::Shape { kernel: k.kernel.shape(), expected });
    }
    let b: HashMap<Symbol, Scalar> = id.bindings.iter().cloned().collect();
    let ks = plane_wave_substitute(&k.substitute(&b)?, f0);
    let tk = id.pullback(&w).plane_wave(0, f0);
    let residual = ks.antisymmetrized().sub(&antisymmetrize(&tk).scale(&id.prefactor));
    Ok(MatchResult { matched: residual.is_zero(), residual })
}
