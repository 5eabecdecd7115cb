use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::{AlgebraElement, AlgebraSpec, Check, Factor, IndexScheme, Placement, PlacementRep, Rep, Status, TensorRep, TripleError};
use crate::clifford::{charge_conjugation, germ_commutator, is_bounded, GammaBasis, Germ, OperatorExpr, GAMMA_BASIS_NAME};
use crate::linalg::{AntilinearOp, ConstraintSet, Mat};

/// Algebra, representation, Dirac operator, real structure and optional grading.
///
/// `parts` lists named summands of `dirac` (e.g. free, yukawa, majorana) so
/// checks can be run per part.
#[derive(Clone, Debug)]
pub struct RealSpectralTriple {
    pub name: String,
    pub algebra: AlgebraSpec,
    pub rep: Rep,
    pub dirac: OperatorExpr,
    pub parts: Vec<(String, OperatorExpr)>,
    pub j: AntilinearOp,
    pub grading: Option<Mat>,
    pub scheme: IndexScheme,
}

impl RealSpectralTriple {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn represent(&self, x: &AlgebraElement) -> Germ {
        self.rep.represent(x)
    }

    /// Named part of the Dirac operator; `all` is the full operator.
    pub fn part(&self, name: &str) -> Result<&OperatorExpr, TripleError> {
        if name == "all" {
            return Ok(&self.dirac);
        }
        self.parts.iter().find(|(n, _)| n == name).map(|(_, d)| d).ok_or_else(|| TripleError::UnknownPart(name.into()))
    }

    pub fn part_names(&self) -> Vec<String> {
        self.parts.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Right action `J π(b)* J⁻¹` of the opposite algebra.
    pub fn opposite(&self, b: &AlgebraElement) -> Germ {
        self.represent(b).adjoint().conjugate_by(&self.j)
    }

    pub fn grading_or_err(&self) -> Result<&Mat, TripleError> {
        self.grading.as_ref().ok_or_else(|| TripleError::MissingGrading(self.name.clone()))
    }

    /// Replaces the Dirac operator by the sum of the given parts.
    pub fn with_parts(&self, parts: Vec<(String, OperatorExpr)>) -> RealSpectralTriple {
        let mut t = self.clone();
        let mut d = OperatorExpr::zero(self.dim());
        for (_, p) in &parts {
            d = d.add(p);
        }
        t.dirac = d;
        t.parts = parts;
        t
    }
}

/// Signs `(ε, ε′, ε″)` of `J² = ε`, `JD = ε′DJ`, `JΓ = ε″ΓJ`; `None` when
/// neither sign holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signs {
    pub epsilon: Option<i8>,
    pub epsilon_prime: Option<i8>,
    pub epsilon_second: Option<i8>,
}

impl Signs {
    pub fn compute(j: &AntilinearOp, d: &OperatorExpr, grading: Option<&Mat>) -> Signs {
        let sq = j.square();
        let n = sq.rows();
        let epsilon = sign_of_mat(&sq, &Mat::identity(n));
        let jd = d.conjugate_by(j);
        let epsilon_prime = if jd == *d {
            Some(1)
        } else if jd == d.neg() {
            Some(-1)
        } else {
            None
        };
        let epsilon_second = grading.and_then(|g| sign_of_mat(&j.conjugate_unitary(g), g));
        Signs { epsilon, epsilon_prime, epsilon_second }
    }
}

fn sign_of_mat(lhs: &Mat, rhs: &Mat) -> Option<i8> {
    if lhs == rhs {
        Some(1)
    } else if *lhs == -rhs {
        Some(-1)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoEntry {
    pub n: u8,
    pub eps: i8,
    pub eps_prime: i8,
    pub eps_second: Option<i8>,
}

#[derive(Deserialize)]
struct KoFile {
    table: Vec<KoEntry>,
}

/// The mod-8 sign table, loaded from the bundled data file.
pub fn ko_table() -> &'static [KoEntry] {
    static TABLE: OnceLock<Vec<KoEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let f: KoFile = serde_json::from_str(include_str!("../../data/ko_dimension.json")).expect("bundled KO table");
        f.table
    })
}

/// KO-dimension matching the signs: even dimensions for graded triples, odd otherwise.
pub fn ko_dimension(s: &Signs) -> Option<u8> {
    let (e, ep) = (s.epsilon?, s.epsilon_prime?);
    ko_table().iter().find(|k| k.eps == e && k.eps_prime == ep && k.eps_second == s.epsilon_second).map(|k| k.n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub triple: String,
    pub dim: usize,
    pub gamma_basis: &'static str,
    pub checks: Vec<Check>,
    pub signs: Signs,
    pub ko_dimension: Option<u8>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Union of all constraints reported by failing checks.
    pub fn constraints(&self) -> ConstraintSet {
        let mut c = ConstraintSet::empty();
        for k in &self.checks {
            c.extend(&k.constraints);
        }
        c
    }
}

fn entries_of(o: &OperatorExpr) -> ConstraintSet {
    ConstraintSet::from_polys(o.all_entries())
}

fn mat_entries(m: &Mat) -> ConstraintSet {
    ConstraintSet::from_polys(m.entries().map(|(_, _, s)| s.clone()))
}

fn check_dims(t: &RealSpectralTriple) -> Result<(), TripleError> {
    let n = t.dim();
    let mut bad = Vec::new();
    if t.dirac.shape() != (n, n) {
        bad.push(format!("D is {:?}", t.dirac.shape()));
    }
    if t.j.dim() != n {
        bad.push(format!("J acts on {}", t.j.dim()));
    }
    if let Some(g) = &t.grading {
        if g.shape() != (n, n) {
            bad.push(format!("grading is {:?}", g.shape()));
        }
    }
    if t.scheme.dim() != n {
        bad.push(format!("index scheme has {} states", t.scheme.dim()));
    }
    for (name, p) in &t.parts {
        if p.shape() != (n, n) {
            bad.push(format!("part {name} is {:?}", p.shape()));
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(TripleError::DimensionMismatch(format!("representation on {n}: {}", bad.join(", "))))
    }
}

/// Checks every axiom on generic elements and extracts the KO signs.
pub fn validate_triple(t: &RealSpectralTriple) -> Result<ValidationReport, TripleError> {
    check_dims(t)?;
    let n = t.dim();
    let a = t.algebra.generic("a");
    let b = t.algebra.generic("b");
    let pa = t.represent(&a);
    let pb = t.represent(&b);
    let mut checks = Vec::new();

    let one = t.represent(&t.algebra.identity());
    checks.push(if one == Germ::identity(n) { Check::pass("rep.unital") } else { Check::fail("rep.unital", "π(1) ≠ I") });
    let prod = t.represent(&a.mul(&b));
    checks.push(if prod == pa.mul(&pb) {
        Check::pass("rep.multiplicative")
    } else {
        Check::fail("rep.multiplicative", "π(ab) ≠ π(a)π(b)")
    });
    checks.push(if t.represent(&a.adjoint()) == pa.adjoint() {
        Check::pass("rep.star")
    } else {
        Check::fail("rep.star", "π(a*) ≠ π(a)†")
    });

    checks.push(Check::from_constraints("dirac.selfadjoint", entries_of(&t.dirac.adjoint().sub(&t.dirac)), Status::Fail));
    let comm = germ_commutator(&t.dirac, &pa, None)?;
    checks.push(Check::from_constraints("dirac.bounded_commutators", is_bounded(&comm).1, Status::Fail));

    checks.push(if t.j.conj && t.j.is_unitary() {
        Check::pass("real.antiunitary")
    } else {
        Check::fail("real.antiunitary", "J is not antiunitary")
    });

    let signs = Signs::compute(&t.j, &t.dirac, t.grading.as_ref());
    let mut missing = Vec::new();
    if signs.epsilon.is_none() {
        missing.push("J² ≠ ±I");
    }
    if signs.epsilon_prime.is_none() {
        missing.push("JD ≠ ±DJ");
    }
    if t.grading.is_some() && signs.epsilon_second.is_none() {
        missing.push("JΓ ≠ ±ΓJ");
    }
    checks.push(if missing.is_empty() { Check::pass("real.signs") } else { Check::fail("real.signs", missing.join("; ")) });

    if let Some(g) = &t.grading {
        checks.push(if g.is_hermitian() && (g * g).is_identity() {
            Check::pass("grading.involution")
        } else {
            Check::fail("grading.involution", "Γ must be selfadjoint with Γ² = I")
        });
        let anti = t.dirac.map(|m| &(g * m) + &(m * g));
        checks.push(Check::from_constraints("grading.anticommutes_dirac", entries_of(&anti), Status::Fail));
        checks.push(Check::from_constraints("grading.commutes_algebra", mat_entries(&g.commutator(&pa.value)), Status::Fail));
    }

    let ko = ko_dimension(&signs);
    Ok(ValidationReport { triple: t.name.clone(), dim: n, gamma_basis: GAMMA_BASIS_NAME, checks, signs, ko_dimension: ko })
}

/// `[π(a), Jπ(b)*J⁻¹]` for explicit elements.
pub fn check_order_zero_with(t: &RealSpectralTriple, a: &AlgebraElement, b: &AlgebraElement) -> ConstraintSet {
    let pa = t.represent(a).value;
    let bo = t.opposite(b).value;
    mat_entries(&pa.commutator(&bo))
}

pub fn check_order_zero(t: &RealSpectralTriple) -> ConstraintSet {
    check_order_zero_with(t, &t.algebra.generic("a"), &t.algebra.generic("b"))
}

/// `[[D, π(a)], Jπ(b)*J⁻¹]` for explicit elements.
pub fn check_first_order_with(
    t: &RealSpectralTriple,
    d: &OperatorExpr,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<ConstraintSet, TripleError> {
    let c = germ_commutator(d, &t.represent(a), None)?;
    let bo = t.opposite(b);
    let o = c.mul_germ(&bo)?.sub(&OperatorExpr::germ_mul(&bo, &c)?);
    Ok(entries_of(&o))
}

pub fn check_first_order_part(t: &RealSpectralTriple, d: &OperatorExpr) -> Result<ConstraintSet, TripleError> {
    check_first_order_with(t, d, &t.algebra.generic("a"), &t.algebra.generic("b"))
}

pub fn check_first_order(t: &RealSpectralTriple) -> Result<ConstraintSet, TripleError> {
    check_first_order_part(t, &t.dirac)
}

pub fn unitary_group_dim(a: &AlgebraSpec) -> Result<usize, TripleError> {
    a.unitary_group_dim()
}

pub(crate) fn spinor_scheme() -> IndexScheme {
    IndexScheme::new(&[("s", &["r", "l"]), ("ṡ", &["0̇", "1̇"])])
}

/// Germ model of a four-dimensional spin manifold: `C∞(M)` acting by
/// multiplication, `D = ∂̸`, `J = 𝒥`, `Γ = γ⁵`.
pub fn manifold_triple() -> RealSpectralTriple {
    let g = GammaBasis::new();
    let d = OperatorExpr::dirac_free();
    let scalar = PlacementRep::new(1, vec![Placement { factor: 0, conj: false, indices: vec![0] }]);
    RealSpectralTriple {
        name: "manifold".into(),
        algebra: AlgebraSpec::new(vec![("f", Factor::C)], true),
        rep: Arc::new(TensorRep { inner: Arc::new(scalar), right: 4 }),
        dirac: d.clone(),
        parts: vec![("free".into(), d)],
        j: charge_conjugation(),
        grading: Some(g.gamma5),
        scheme: spinor_scheme(),
    }
}

/// Product of the manifold germ triple with a finite triple, finite index first:
/// `H = H_F ⊗ S`, `D = I⊗∂̸ + D_F⊗γ⁵`, `Γ = Γ_F⊗γ⁵`, `J = J_F⊗𝒥`.
pub fn product_triple(manifold: &RealSpectralTriple, finite: &RealSpectralTriple) -> Result<RealSpectralTriple, TripleError> {
    let gm = manifold.grading_or_err()?;
    let gf = finite.grading_or_err()?;
    if manifold.dim() != 4 {
        return Err(TripleError::DimensionMismatch(format!("manifold part acts on {}", manifold.dim())));
    }
    let nf = finite.dim();
    let free = manifold.dirac.kron_left(&Mat::identity(nf));
    let mut parts = vec![("free".to_string(), free)];
    for (name, p) in &finite.parts {
        if !p.is_order0() {
            return Err(TripleError::DimensionMismatch(format!("finite part {name} is not bounded")));
        }
        parts.push((name.clone(), OperatorExpr::from_mat(p.order0.kron(gm))));
    }
    let mut algebra = finite.algebra.clone();
    algebra.functional = true;
    let base = RealSpectralTriple {
        name: format!("{}×{}", manifold.name, finite.name),
        algebra,
        rep: Arc::new(TensorRep { inner: finite.rep.clone(), right: 4 }),
        dirac: OperatorExpr::zero(4 * nf),
        parts: Vec::new(),
        j: finite.j.kron(&manifold.j)?,
        grading: Some(gf.kron(gm)),
        scheme: finite.scheme.product(&manifold.scheme),
    };
    Ok(base.with_parts(parts))
}
