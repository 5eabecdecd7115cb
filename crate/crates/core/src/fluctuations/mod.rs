//! Generalized one-forms, fluctuated Dirac operators, selfadjoint
//! fluctuation families, gauge transformations and transparency.
//!
//! One-forms are taken in the left-module form `Σ π(a)[D, π(b)]_ρ`
//! (untwisted when `ρ` is the identity). They are generated from a real
//! basis of every algebra factor, with the right-hand element multiplied by a
//! generic real function so that its gradient enters the commutator.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{germ_commutator, Germ, OperatorExpr};
use crate::linalg::{express_in_real, real_relations, real_span_basis, solve_linear_in_symbols, LinalgError, Mat};
use crate::models::Model;
use crate::scalars::{GaussRat, Kind, Monomial, Scalar, ScalarError, Symbol};
use crate::triples::{AlgebraElement, AlgebraSpec, Signs};
use crate::twists::rho_adjoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FluctuationError {
    #[error("commutator of D with the factor {0} is unbounded")]
    Unbounded(String),
    #[error("one-form is not in the span of the generated one-forms")]
    NotInSpace,
    #[error("element is not unitary")]
    NotUnitary,
    #[error("J neither commutes nor anticommutes with D")]
    NoSign,
    #[error("the ρ-adjoint needs a twisted triple")]
    Untwisted,
    #[error("operator is not a member of the family: {0}")]
    OutsideFamily(String),
    #[error("named directions do not span the family: {0}")]
    Directions(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Adjointness imposed on fluctuations: the Hilbert adjoint `†` or the
/// ρ-adjoint `O⁺ = (R O R†)†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjointness {
    Standard,
    Rho,
}

/// Real span of the order-zero one-forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneFormSpace {
    pub basis: Vec<Mat>,
}

impl OneFormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k B_k` with one fresh real field symbol `{prefix}{k}` per basis element.
    pub fn generic(&self, prefix: &str) -> Result<(Vec<Symbol>, Mat), FluctuationError> {
        let n = self.basis.first().map_or(0, Mat::rows);
        let mut out = Mat::zeros(n, n);
        let mut syms = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            let s = Symbol::field(&format!("{prefix}{k}"), Kind::Real)?;
            out = &out + &b.scale(&Scalar::from(s));
            syms.push(s);
        }
        Ok((syms, out))
    }

    /// Whether `a = Σ p_k M_k` with real coefficient functions `p_k` among
    /// `params` and every `M_k` in the span.
    pub fn contains(&self, a: &Mat, params: &[Symbol]) -> Result<bool, FluctuationError> {
        let keep: BTreeSet<Symbol> = params.iter().copied().collect();
        for (_, m) in coefficient_mats(a, &keep) {
            if m.is_zero() {
                continue;
            }
            if self.basis.is_empty() || express_in_real(&m, &self.basis)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Selfadjoint fluctuations `D + Σ p_k N_k` with real field parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FluctuationFamily {
    pub adjointness: Adjointness,
    pub params: Vec<Symbol>,
    /// `N_k = A_k + ε′ J A_k J⁻¹`.
    pub directions: Vec<Mat>,
    /// A one-form `A_k` producing each direction.
    pub one_forms: Vec<Mat>,
    /// The operator being fluctuated.
    pub base: OperatorExpr,
}

fn rat_scalar(c: &BigRational) -> Scalar {
    Scalar::constant(GaussRat::new(c.clone(), BigRational::zero()))
}

fn combine(coeffs: &[BigRational], mats: &[Mat], n: usize) -> Mat {
    let mut out = Mat::zeros(n, n);
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            out = &out + &m.scale(&rat_scalar(c));
        }
    }
    out
}

fn weighted(params: &[Symbol], mats: &[Mat], n: usize) -> Mat {
    let mut out = Mat::zeros(n, n);
    for (p, m) in params.iter().zip(mats) {
        out = &out + &m.scale(&Scalar::from(*p));
    }
    out
}

impl FluctuationFamily {
    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `Σ p_k N_k`.
    pub fn fluctuation(&self) -> Mat {
        weighted(&self.params, &self.directions, self.dim())
    }

    /// `Σ p_k A_k`.
    pub fn one_form(&self) -> Mat {
        weighted(&self.params, &self.one_forms, self.dim())
    }

    /// The fluctuated operator with symbolic parameters.
    pub fn operator(&self) -> OperatorExpr {
        let mut d = self.base.clone();
        d.order0 = &d.order0 + &self.fluctuation();
        d
    }

    /// Re-expresses the family in the given directions, one real field
    /// parameter per name. The directions must span exactly the same space.
    pub fn renamed(&self, named: &[(String, Mat)]) -> Result<FluctuationFamily, FluctuationError> {
        let mats: Vec<Mat> = named.iter().map(|(_, m)| m.clone()).collect();
        if real_span_basis(&mats)?.len() != mats.len() || mats.len() != self.len() {
            return Err(FluctuationError::Directions(format!("{} named, {} in the family", mats.len(), self.len())));
        }
        let mut one_forms = Vec::new();
        let mut params = Vec::new();
        for (name, m) in named {
            let c = express_in_real(m, &self.directions)?
                .ok_or_else(|| FluctuationError::Directions(format!("{name} is outside the family")))?;
            one_forms.push(combine(&c, &self.one_forms, self.dim()));
            params.push(Symbol::field(name, Kind::Real)?);
        }
        Ok(FluctuationFamily { params, directions: mats, one_forms, ..self.clone() })
    }

    /// Parameter values `q` with `fluct = Σ q_k N_k`, when unique.
    pub fn coordinates(&self, fluct: &Mat) -> Result<Vec<Scalar>, FluctuationError> {
        let unknowns: Vec<Symbol> =
            (0..self.len()).map(|k| Symbol::intern(&format!("\u{22c6}{k}"), Kind::Real)).collect::<Result<_, _>>()?;
        let diff = &weighted(&unknowns, &self.directions, self.dim()) - fluct;
        let eqs: Vec<Scalar> = diff.entries().map(|(_, _, s)| s.clone()).collect();
        let sol = solve_linear_in_symbols(&eqs, &unknowns).map_err(|e| match e {
            LinalgError::Infeasible => FluctuationError::OutsideFamily("inconsistent".into()),
            e => e.into(),
        })?;
        if sol.dim() > 0 || !sol.conditions.is_empty() {
            return Err(FluctuationError::OutsideFamily(format!("{} free, {} conditions", sol.dim(), sol.conditions.len())));
        }
        let v = sol.values();
        Ok(unknowns.iter().map(|u| v[u].clone()).collect())
    }
}

/// Splits the entries of `m` by monomials in `keep`, one coefficient matrix per monomial.
fn coefficient_mats(m: &Mat, keep: &BTreeSet<Symbol>) -> BTreeMap<Monomial, Mat> {
    let mut out: BTreeMap<Monomial, Mat> = BTreeMap::new();
    for (i, j, s) in m.entries() {
        for (mono, c) in s.split_by(&|x| keep.contains(&x)) {
            let e = out.entry(mono).or_insert_with(|| Mat::zeros(m.rows(), m.cols()));
            *e.get_mut(i, j) += &c;
        }
    }
    out
}

fn rho_of(model: &Model, x: &AlgebraElement) -> AlgebraElement {
    match model {
        Model::Real(_) => x.clone(),
        Model::Twisted(t) => t.rho.apply(x),
    }
}

/// `[D, π(x)]_ρ`, untwisted for real triples.
pub fn commutator(model: &Model, d: &OperatorExpr, x: &AlgebraElement) -> Result<OperatorExpr, FluctuationError> {
    let base = model.base();
    let px = base.represent(x);
    let prx = base.represent(&rho_of(model, x));
    Ok(germ_commutator(d, &px, Some(&prx))?)
}

fn single(alg: &AlgebraSpec, k: usize, g: Germ) -> AlgebraElement {
    let factors =
        alg.factors.iter().enumerate().map(|(i, (_, f))| if i == k { g.clone() } else { Germ::zeros(f.size(), f.size()) }).collect();
    AlgebraElement { factors }
}

/// `ε′` with `JD = ε′DJ` for the full Dirac operator of the model.
pub fn epsilon_prime(model: &Model) -> Result<i8, FluctuationError> {
    let t = model.base();
    Signs::compute(&t.j, &t.dirac, t.grading.as_ref()).epsilon_prime.ok_or(FluctuationError::NoSign)
}

fn test_function() -> Result<(Symbol, BTreeSet<Symbol>), FluctuationError> {
    let w = Symbol::field("\u{3c9}", Kind::Real)?;
    let mut keep: BTreeSet<Symbol> = BTreeSet::from([w]);
    for mu in 0..4 {
        keep.extend(Scalar::from(w).partial(mu).symbols());
    }
    Ok((w, keep))
}

/// Real span of `π(e_r)[D, π(e_s)]_ρ` over real bases of the factors.
pub fn one_form_space(model: &Model, d: &OperatorExpr) -> Result<OneFormSpace, FluctuationError> {
    let base = model.base();
    let alg = &base.algebra;
    let (w, keep) = test_function()?;
    let gens: Vec<(usize, Mat)> =
        alg.factors.iter().enumerate().flat_map(|(k, (_, f))| f.real_basis().into_iter().map(move |m| (k, m))).collect();
    let mut derived = Vec::new();
    for (k, m) in &gens {
        let g = if alg.functional { Germ::from_value(m.scale(&Scalar::from(w))) } else { Germ::constant(m.clone()) };
        let c = commutator(model, d, &single(alg, *k, g))?;
        if !c.is_order0() {
            return Err(FluctuationError::Unbounded(alg.factors[*k].0.clone()));
        }
        derived.extend(coefficient_mats(&c.order0, &keep).into_values().filter(|m| !m.is_zero()));
    }
    if derived.is_empty() {
        return Ok(OneFormSpace { basis: Vec::new() });
    }
    let derived = real_span_basis(&derived)?;
    let mut forms = Vec::new();
    for (k, m) in &gens {
        let a = base.represent(&single(alg, *k, Germ::constant(m.clone()))).value;
        for b in &derived {
            let p = &a * b;
            if !p.is_zero() {
                forms.push(p);
            }
        }
    }
    Ok(OneFormSpace { basis: real_span_basis(&forms)? })
}

/// `D + A + ε′ J A J⁻¹`. Membership of `A` is the caller's business; see
/// [`fluctuate_in`] for the checked version.
pub fn fluctuate(model: &Model, d: &OperatorExpr, a: &Mat) -> Result<OperatorExpr, FluctuationError> {
    let eps = epsilon_prime(model)?;
    let ja = model.base().j.conjugate_unitary(a);
    let mut out = d.clone();
    out.order0 = &(&out.order0 + a) + &ja.scale(&Scalar::from_int(eps.into()));
    Ok(out)
}

/// [`fluctuate`] after checking that `a` lies in `space` with coefficients in `params`.
pub fn fluctuate_in(
    space: &OneFormSpace,
    model: &Model,
    d: &OperatorExpr,
    a: &Mat,
    params: &[Symbol],
) -> Result<OperatorExpr, FluctuationError> {
    if !space.contains(a, params)? {
        return Err(FluctuationError::NotInSpace);
    }
    fluctuate(model, d, a)
}

fn adjoint_of(model: &Model, adj: Adjointness, m: &Mat) -> Result<Mat, FluctuationError> {
    match (adj, model) {
        (Adjointness::Standard, _) => Ok(m.adjoint()),
        (Adjointness::Rho, Model::Twisted(t)) => Ok(rho_adjoint(t, m)),
        (Adjointness::Rho, Model::Real(_)) => Err(FluctuationError::Untwisted),
    }
}

/// Fluctuations of `d` that are selfadjoint for the chosen adjoint, with one
/// real field parameter `x{k}` per direction of an echelonized basis.
pub fn selfadjoint_family(model: &Model, d: &OperatorExpr, adj: Adjointness) -> Result<FluctuationFamily, FluctuationError> {
    let n = model.dim();
    let eps = Scalar::from_int(epsilon_prime(model)?.into());
    let j = &model.base().j;
    let space = one_form_space(model, d)?;
    let sym: Vec<Mat> = space.basis.iter().map(|b| b + &j.conjugate_unitary(b).scale(&eps)).collect();
    let defects: Vec<Mat> = sym.iter().map(|s| Ok(&adjoint_of(model, adj, s)? - s)).collect::<Result<_, FluctuationError>>()?;
    let mut dirs = Vec::new();
    let mut forms = Vec::new();
    for c in real_relations(&defects)? {
        let dir = combine(&c, &sym, n);
        if !dir.is_zero() {
            dirs.push(dir);
            forms.push(combine(&c, &space.basis, n));
        }
    }
    let mut family =
        FluctuationFamily { adjointness: adj, params: Vec::new(), directions: Vec::new(), one_forms: Vec::new(), base: d.clone() };
    if dirs.is_empty() {
        return Ok(family);
    }
    for (k, dir) in real_span_basis(&dirs)?.into_iter().enumerate() {
        let c = express_in_real(&dir, &dirs)?.expect("basis of the span");
        family.one_forms.push(combine(&c, &forms, n));
        family.directions.push(dir);
        family.params.push(Symbol::field(&format!("x{k}"), Kind::Real)?);
    }
    Ok(family)
}

fn unitary_value(model: &Model, u: &AlgebraElement) -> Result<Germ, FluctuationError> {
    let pu = model.base().represent(u);
    if !(&pu.value.adjoint() * &pu.value).is_identity() {
        return Err(FluctuationError::NotUnitary);
    }
    Ok(pu)
}

/// `A^u = ρ(u)[D, u*]_ρ + ρ(u) A u*` (untwisted: `u[D, u*] + uAu*`).
pub fn gauge_transform(model: &Model, d: &OperatorExpr, a: &Mat, u: &AlgebraElement) -> Result<Mat, FluctuationError> {
    let pu = unitary_value(model, u)?;
    let ru = model.base().represent(&rho_of(model, u)).value;
    let c = commutator(model, d, &u.adjoint())?;
    if !c.is_order0() {
        return Err(FluctuationError::Unbounded("u".into()));
    }
    Ok(&(&ru * &c.order0) + &(&(&ru * a) * &pu.value.adjoint()))
}

/// `Ad(u) = u J u J⁻¹` as a germ, with `u` replaced by `ρ(u)` when `twisted`.
fn adjoint_action(model: &Model, u: &AlgebraElement, twisted: bool) -> Germ {
    let x = if twisted { rho_of(model, u) } else { u.clone() };
    let pu = model.base().represent(&x);
    pu.mul(&pu.conjugate_by(&model.base().j))
}

/// Checks `ρ(Ad u) D_A Ad(u)⁻¹ = D_{A^u}` exactly.
pub fn conjugation_identity(model: &Model, d: &OperatorExpr, a: &Mat, u: &AlgebraElement) -> Result<bool, FluctuationError> {
    unitary_value(model, u)?;
    let da = fluctuate(model, d, a)?;
    let left = adjoint_action(model, u, true);
    let j = &model.base().j;
    let pus = model.base().represent(&u.adjoint());
    let inv = pus.conjugate_by(j).mul(&pus);
    let lhs = OperatorExpr::germ_mul(&left, &da.mul_germ(&inv)?)?;
    let au = gauge_transform(model, d, a, u)?;
    Ok(lhs == fluctuate(model, d, &au)?)
}

/// Parameters of the family after the gauge transformation by `u`.
pub fn transform_parameters(model: &Model, family: &FluctuationFamily, u: &AlgebraElement) -> Result<Vec<Scalar>, FluctuationError> {
    let au = gauge_transform(model, &family.base, &family.one_form(), u)?;
    let f = fluctuate(model, &family.base, &au)?;
    family.coordinates(&(&f.order0 - &family.base.order0))
}

/// `(Ad u⁻¹)⁺ = ρ(Ad u)` for the ρ-adjoint of a twisted model.
pub fn rho_adjoint_identity(model: &Model, u: &AlgebraElement) -> Result<bool, FluctuationError> {
    let Model::Twisted(t) = model else { return Err(FluctuationError::Untwisted) };
    unitary_value(model, u)?;
    let j = &t.base.j;
    let pus = t.base.represent(&u.adjoint()).value;
    let inv = &j.conjugate_unitary(&pus) * &pus;
    Ok(rho_adjoint(t, &inv) == adjoint_action(model, u, true).value)
}

/// Whether `[D_part, π(a)]_ρ` vanishes for a generic element `a`.
pub fn check_transparency(model: &Model, d: &OperatorExpr) -> Result<bool, FluctuationError> {
    let a = model.base().algebra.generic("a");
    Ok(commutator(model, d, &a)?.is_zero())
}
