//! Twisted spectral triples: automorphisms, twisted commutators and the
//! twisted axioms, minimal twists, the ρ-inner product and closure of
//! subalgebras under a twist.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::clifford::{germ_commutator, is_bounded, GammaBasis, OperatorExpr};
use crate::linalg::{solve_linear_in_symbols, ConstraintSet, LinalgError, Mat};
use crate::scalars::{GaussRat, Scalar};
use crate::triples::{
    check_order_zero, validate_triple, AlgebraElement, AlgebraSpec, Check, EmbeddedRep, Embedding, ProjectedPairRep, RealSpectralTriple,
    Status, TripleError, ValidationReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("twist precondition violated: {0}")]
    Precondition(String),
    #[error("invalid automorphism: {0}")]
    Automorphism(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Automorphism permuting the factors of an algebra: `ρ(x)_k = x_{perm[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism { perm: (0..n).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self, TwistError> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(TwistError::Automorphism(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Automorphism { perm })
    }

    /// Exchanges the factors in each pair.
    pub fn swaps(n: usize, pairs: &[(usize, usize)]) -> Result<Self, TwistError> {
        let mut perm: Vec<usize> = (0..n).collect();
        for &(i, j) in pairs {
            perm.swap(i, j);
        }
        Automorphism::from_perm(perm)
    }

    /// Flip of `A ⊕ A`: the first `n` factors with the last `n`.
    pub fn flip(n: usize) -> Self {
        Automorphism { perm: (n..2 * n).chain(0..n).collect() }
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        x.permute(&self.perm)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (k, &p) in self.perm.iter().enumerate() {
            inv[p] = k;
        }
        Automorphism { perm: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Self {
        Automorphism { perm: self.perm.iter().map(|&k| other.perm[k]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Only factors of the same type may be exchanged.
    pub fn respects(&self, alg: &AlgebraSpec) -> bool {
        self.perm.len() == alg.factors.len() && self.perm.iter().enumerate().all(|(k, &p)| alg.factors[k].1 == alg.factors[p].1)
    }
}

/// A real triple together with a twist `ρ` and a unitary `R` implementing it.
#[derive(Clone, Debug)]
pub struct TwistedTriple {
    pub base: RealSpectralTriple,
    pub rho: Automorphism,
    pub r: Mat,
    /// Operator `Γ̃` whose eigenprojections define the representation, for minimal twists.
    pub twisting: Option<Mat>,
}

impl TwistedTriple {
    pub fn new(base: RealSpectralTriple, rho: Automorphism, r: Mat) -> Result<TwistedTriple, TwistError> {
        if !rho.respects(&base.algebra) {
            return Err(TwistError::Automorphism(format!("{:?} does not preserve the factor types", rho.perm)));
        }
        if r.shape() != (base.dim(), base.dim()) {
            return Err(TwistError::Precondition(format!("R has shape {:?}", r.shape())));
        }
        Ok(TwistedTriple { base, rho, r, twisting: None })
    }

    pub fn name(&self) -> &str {
        &self.base.name
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `J R J⁻¹ = ±R`; `None` if neither.
    pub fn r_j_sign(&self) -> Option<i8> {
        let c = self.base.j.conjugate_unitary(&self.r);
        if c == self.r {
            Some(1)
        } else if c == -&self.r {
            Some(-1)
        } else {
            None
        }
    }

    /// Whether `Γ̃` anticommutes with `D`, when a twisting operator is recorded.
    pub fn twisting_anticommutes_dirac(&self) -> Option<bool> {
        let g = self.twisting.as_ref()?;
        Some(self.base.dirac.map(|m| &(g * m) + &(m * g)).is_zero())
    }

    pub fn with_parts(&self, parts: Vec<(String, OperatorExpr)>) -> TwistedTriple {
        TwistedTriple { base: self.base.with_parts(parts), ..self.clone() }
    }
}

/// `[D, π(a)]_ρ = Dπ(a) − π(ρ(a))D`.
pub fn twisted_commutator(d: &OperatorExpr, a: &AlgebraElement, t: &TwistedTriple) -> Result<OperatorExpr, TwistError> {
    let pa = t.base.represent(a);
    let pra = t.base.represent(&t.rho.apply(a));
    Ok(germ_commutator(d, &pa, Some(&pra))?)
}

/// Validation of the underlying data with twisted boundedness, plus the
/// requirements on `ρ` and `R`.
pub fn validate_twisted(t: &TwistedTriple) -> Result<ValidationReport, TwistError> {
    let mut report = validate_triple(&t.base)?;
    let a = t.base.algebra.generic("a");
    let tc = twisted_commutator(&t.base.dirac, &a, t)?;
    let bounded = Check::from_constraints("dirac.bounded_twisted_commutators", is_bounded(&tc).1, Status::Fail);
    if let Some(pos) = report.checks.iter().position(|c| c.name == "dirac.bounded_commutators") {
        report.checks[pos] = bounded;
    }
    report.checks.push(if t.rho.respects(&t.base.algebra) && t.rho.compose(&t.rho.inverse()).is_identity() {
        Check::pass("twist.automorphism")
    } else {
        Check::fail("twist.automorphism", "ρ does not preserve the factor types")
    });
    report.checks.push(if t.r.is_unitary() { Check::pass("twist.r_unitary") } else { Check::fail("twist.r_unitary", "R†R ≠ I") });
    let lhs = t.base.represent(&a).conjugate_mat(&t.r);
    let rhs = t.base.represent(&t.rho.apply(&a));
    report.checks.push(if lhs == rhs {
        Check::pass("twist.r_implements_rho")
    } else {
        Check::fail("twist.r_implements_rho", "Rπ(a)R† ≠ π(ρ(a))")
    });
    let note = match t.r_j_sign() {
        Some(1) => "RJ = JR",
        Some(_) => "RJ = −JR",
        None => "R neither commutes nor anticommutes with J",
    };
    if let Some(c) = report.checks.iter_mut().find(|c| c.name == "twist.r_unitary") {
        c.note = note.into();
    }
    Ok(report)
}

pub fn check_twisted_order_zero(t: &TwistedTriple) -> ConstraintSet {
    check_order_zero(&t.base)
}

/// `[[D, π(a)]_ρ, b°]_{ρ°} = [D,a]_ρ·b° − ρ°(b°)·[D,a]_ρ` with
/// `b° = Jπ(b)*J⁻¹` and `ρ°(b°) = Jπ(ρ(b))*J⁻¹`.
pub fn check_twisted_first_order_with(
    t: &TwistedTriple,
    d: &OperatorExpr,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<ConstraintSet, TwistError> {
    let c = twisted_commutator(d, a, t)?;
    let bo = t.base.opposite(b);
    let rbo = t.base.opposite(&t.rho.apply(b));
    let o = c.mul_germ(&bo)?.sub(&OperatorExpr::germ_mul(&rbo, &c)?);
    Ok(ConstraintSet::from_polys(o.all_entries()))
}

pub fn check_twisted_first_order_part(t: &TwistedTriple, d: &OperatorExpr) -> Result<ConstraintSet, TwistError> {
    check_twisted_first_order_with(t, d, &t.base.algebra.generic("a"), &t.base.algebra.generic("b"))
}

pub fn check_twisted_first_order(t: &TwistedTriple) -> Result<ConstraintSet, TwistError> {
    check_twisted_first_order_part(t, &t.base.dirac)
}

/// `I_k ⊗ γ⁰` on a product space with the spinor index last.
pub fn spinor_flip(dim: usize) -> Mat {
    Mat::identity(dim / 4).kron(&GammaBasis::new().gamma[0])
}

/// Minimal twist by `ℂ²` built from the eigenprojections of `Γ̃`:
/// `π((a, a′)) = ½(I+Γ̃)π(a) + ½(I−Γ̃)π(a′)`, `ρ` the flip, `R` supplied.
pub fn minimal_twist(t: &RealSpectralTriple, gt: &Mat, r: &Mat) -> Result<TwistedTriple, TwistError> {
    let n = t.dim();
    if gt.shape() != (n, n) {
        return Err(TwistError::Precondition(format!("Γ̃ has shape {:?}", gt.shape())));
    }
    if !gt.is_hermitian() {
        return Err(TwistError::Precondition("Γ̃ is not selfadjoint".into()));
    }
    if !(gt * gt).is_identity() {
        return Err(TwistError::Precondition("Γ̃² ≠ I".into()));
    }
    let a = t.algebra.generic("a");
    if !gt.commutator(&t.represent(&a).value).is_zero() {
        return Err(TwistError::Precondition("Γ̃ does not commute with the algebra".into()));
    }
    let tr = gt.trace().as_constant().ok_or_else(|| TwistError::Precondition("Γ̃ is not constant".into()))?;
    let nn = GaussRat::from_int(n as i64);
    if tr == nn || tr == -&nn {
        return Err(TwistError::Precondition("Γ̃ has a single eigenvalue".into()));
    }
    let half = Scalar::from_ratio(1, 2);
    let id = Mat::identity(n);
    let p_plus = (&id + gt).scale(&half);
    let p_minus = (&id - gt).scale(&half);
    let k = t.algebra.factors.len();
    let mut base = t.clone();
    base.algebra = t.algebra.doubled();
    base.rep = Arc::new(ProjectedPairRep { base: t.rep.clone(), base_factors: k, p_plus, p_minus });
    let mut tw = TwistedTriple::new(base, Automorphism::flip(k), r.clone())?;
    tw.twisting = Some(gt.clone());
    Ok(tw)
}

/// Minimal twist by the grading itself.
pub fn twist_by_grading(t: &RealSpectralTriple, r: &Mat) -> Result<TwistedTriple, TwistError> {
    let g = t.grading_or_err()?.clone();
    minimal_twist(t, &g, r)
}

/// Diagonal elements `(a, a)` of a twist of `A ⊕ A`.
pub fn diagonal_element(x: &AlgebraElement) -> AlgebraElement {
    let mut f = x.factors.clone();
    f.extend(x.factors.iter().cloned());
    AlgebraElement { factors: f }
}

/// `⟨ψ, φ⟩_ρ = ⟨ψ, Rφ⟩` for column vectors.
pub fn rho_product(t: &TwistedTriple, psi: &Mat, phi: &Mat) -> Result<Scalar, TwistError> {
    let v = psi.adjoint().try_mul(&t.r.try_mul(phi)?)?;
    Ok(v.get(0, 0).clone())
}

/// `O⁺ = ρ(O)† = (R O R†)†`.
pub fn rho_adjoint(t: &TwistedTriple, o: &Mat) -> Mat {
    (&(&t.r * o) * &t.r.adjoint()).adjoint()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

/// Signature of a selfadjoint unitary `R` (eigenvalues ±1), read off the trace.
pub fn signature(r: &Mat) -> Option<Signature> {
    if !r.is_hermitian() || !r.is_unitary() {
        return None;
    }
    let tr = r.trace().as_constant()?;
    if !tr.is_real() {
        return None;
    }
    let n = r.rows() as i64;
    let t = tr.re.clone();
    if !t.is_integer() {
        return None;
    }
    let t: i64 = t.to_integer().try_into().ok()?;
    Some(Signature { positive: ((n + t) / 2) as usize, negative: ((n - t) / 2) as usize })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub closed: bool,
    /// Conditions on the generic element under which `ρ(π(x))` lies in `π(sub)`.
    pub constraints: ConstraintSet,
    /// Factor values of `ρ(x)` for the generic element, when not closed.
    pub witness: Option<Vec<(String, String)>>,
}

/// Decides whether `ρ` maps the image of a subalgebra into itself.
pub fn check_closure_under_twist(t: &TwistedTriple, sub: &AlgebraSpec, emb: &Embedding) -> Result<ClosureReport, TwistError> {
    if emb.blocks.len() != t.base.algebra.factors.len() {
        return Err(TwistError::Precondition("embedding does not match the twisted algebra".into()));
    }
    let rep = EmbeddedRep { parent: t.base.rep.clone(), embedding: emb.clone() };
    use crate::triples::Representation;
    let x = sub.generic("a").values_only();
    let y = sub.generic("w").values_only();
    let image = t.rho.apply(&emb.apply(&x));
    let diff = &rep.represent(&y).value - &t.base.represent(&image).value;
    let eqs: Vec<Scalar> = diff.entries().map(|(_, _, s)| s.clone()).collect();
    let unknowns = sub.generic_symbols("w");
    let constraints = match solve_linear_in_symbols(&eqs, &unknowns) {
        Ok(space) => space.conditions.linear_reduced(),
        Err(LinalgError::Infeasible) => ConstraintSet::from_polys([Scalar::one()]),
        Err(e) => return Err(e.into()),
    };
    let closed = constraints.is_satisfied();
    let witness = (!closed).then(|| {
        t.base
            .algebra
            .factors
            .iter()
            .zip(&image.factors)
            .map(|((name, _), g)| {
                let v = &g.value;
                let text = if v.shape() == (1, 1) { v.get(0, 0).to_string() } else { serde_json::to_string(v).unwrap_or_default() };
                (name.clone(), text)
            })
            .collect()
    });
    Ok(ClosureReport { closed, constraints, witness })
}
