//! Catalog of ready-made triples: the Standard Model and its grand
//! symmetric extensions, their twists, and the low-dimensional twisted
//! examples with a Lorentzian fermionic action.

mod grand;
mod lorentz;
mod sm;
mod suite;

pub use grand::{bprime, bsub, bsub_algebra, bsub_embedding, btilde, grand, grand_broken, grand_chiral, S_L, S_R};
pub use lorentz::{
    doubled_manifold, ed, ed_finite, ed_i_prime, ed_i_second, field_directions, hplus_basis, hr_basis, manifold_twist, sm_twist, two_point,
};
pub use sm::{particle_swap, sm, sm_algebra, sm_finite, sm_grading, sm_majorana, sm_scheme, sm_yukawa, ALPHA_L, ALPHA_R};
pub use suite::{check_suite, restrict};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::triples::{break_by_commutant, BreakReport, RealSpectralTriple, Status, TripleError};
use crate::twists::{TwistError, TwistedTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown model {0}")]
    Unknown(String),
    #[error("unsupported number of generations {0} (use 1 or 3)")]
    Generations(usize),
    #[error("grading is not diagonal in the chosen basis")]
    NotDiagonal,
    #[error("model {0} has no grading")]
    Ungraded(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Twist(#[from] TwistError),
}

#[derive(Clone, Debug)]
pub enum Model {
    Real(RealSpectralTriple),
    Twisted(TwistedTriple),
}

impl Model {
    pub fn name(&self) -> &str {
        &self.base().name
    }

    /// The underlying triple (for a twist, the one carrying the twisted algebra).
    pub fn base(&self) -> &RealSpectralTriple {
        match self {
            Model::Real(t) => t,
            Model::Twisted(t) => &t.base,
        }
    }

    pub fn twisted(&self) -> Option<&TwistedTriple> {
        match self {
            Model::Real(_) => None,
            Model::Twisted(t) => Some(t),
        }
    }

    pub fn dim(&self) -> usize {
        self.base().dim()
    }
}

/// Catalog entry: what a model is and how its blocks are laid out.
#[derive(Clone, Copy, Debug)]
pub struct ModelDescriptor {
    pub name: &'static str,
    pub summary: &'static str,
    pub blocks: &'static [&'static str],
    pub twisted: bool,
    /// Checks expected not to pass; every other check is expected to pass.
    pub expected: &'static [(&'static str, Status)],
}

impl ModelDescriptor {
    pub fn expected_status(&self, check: &str) -> Status {
        self.expected.iter().find(|(n, _)| *n == check).map_or(Status::Pass, |(_, s)| *s)
    }
}

const C: Status = Status::Constrained;
const F: Status = Status::Fail;

pub const CATALOG: &[ModelDescriptor] = &[
    ModelDescriptor {
        name: "manifold",
        summary: "four-dimensional spin manifold, germ model",
        blocks: &["C∞(M) by multiplication on Dirac spinors", "D = ∂̸, J = iγ⁰γ² ∘ conj, Γ = γ⁵"],
        twisted: false,
        expected: &[],
    },
    ModelDescriptor {
        name: "sm-finite",
        summary: "finite Standard Model triple, ℂ ⊕ ℍ ⊕ M₃(ℂ) on ℂ^{32N}",
        blocks: &[
            "index C (particle, antiparticle), I (lepton, three colours), α (1̇, 2̇, 1, 2)",
            "yukawa: right-left couplings Υν, Υe, Υu, Υd and their conjugates on antiparticles",
            "majorana: kR between right neutrino and its antiparticle",
            "J exchanges particles and antiparticles; Γ = +1 on left particles and right antiparticles",
        ],
        twisted: false,
        expected: &[],
    },
    ModelDescriptor {
        name: "sm",
        summary: "almost-commutative Standard Model, manifold times the finite triple",
        blocks: &["D = ∂̸ ⊗ I + γ⁵ ⊗ (D_Y + D_M) in finite-major order", "Γ = Γ_F ⊗ γ⁵, J = J_F ⊗ 𝒥"],
        twisted: false,
        expected: &[],
    },
    ModelDescriptor {
        name: "grand",
        summary: "grand algebra M₄(ℍ) ⊕ M₈(ℂ) on the 128 degrees of freedom",
        blocks: &["Q acts on (ṡ, α) of particles, trivially on s and I", "M acts on (s, I) of antiparticles, trivially on ṡ and α"],
        twisted: false,
        expected: &[
            ("dirac.bounded_commutators", F),
            ("grading.commutes_algebra", F),
            ("first_order.free", C),
            ("first_order.yukawa", C),
            ("first_order.majorana", C),
            ("first_order.all", C),
        ],
    },
    ModelDescriptor {
        name: "grand-chiral",
        summary: "grand algebra acting on the chiral index in both sectors",
        blocks: &["Qʳ, Qˡ ∈ M₂(ℍ) act on α of particles of chirality r, l", "M acts on (s, I) of antiparticles"],
        twisted: false,
        expected: &[
            ("dirac.bounded_commutators", F),
            ("grading.commutes_algebra", F),
            ("order_zero", C),
            ("first_order.free", C),
            ("first_order.yukawa", C),
            ("first_order.majorana", C),
            ("first_order.all", C),
        ],
    },
    ModelDescriptor {
        name: "grand-broken",
        summary: "grading-compatible breaking of the grand algebra adapted to the Majorana term",
        blocks: &[
            "hL, cR act on particles with ṡ = 0̇; hL′, cR′ on ṡ = 1̇",
            "cR also acts on lepton antiparticles; m3ˡ, m3ʳ on quark antiparticles of each chirality",
        ],
        twisted: false,
        expected: &[("dirac.bounded_commutators", F), ("first_order.free", C), ("first_order.all", C)],
    },
    ModelDescriptor {
        name: "bprime",
        summary: "four copies of ℍ and M₄(ℂ), twisted by the flip of chiralities",
        blocks: &[
            "qLˢ, qRˢ act on the left/right pair of particles of chirality s",
            "m acts on I of antiparticles",
            "D = ∂̸ ⊗ I, R = I ⊗ γ⁰",
        ],
        twisted: true,
        expected: &[],
    },
    ModelDescriptor {
        name: "btilde",
        summary: "subalgebra with two complex right factors, full finite Dirac operator",
        blocks: &[
            "qLˢ on the left pair, diag(cRˢ, c̄Rˢ) on the right pair of particles of chirality s",
            "c on lepton antiparticles, m on quark antiparticles",
            "ρ swaps l and r; R = I ⊗ γ⁰",
        ],
        twisted: true,
        expected: &[("first_order.majorana", C), ("first_order.all", C)],
    },
    ModelDescriptor {
        name: "bsub",
        summary: "subalgebra of btilde with its lone ℂ identified with cRˡ",
        blocks: &["acts through btilde; not invariant under the flip"],
        twisted: false,
        expected: &[("dirac.bounded_commutators", F), ("first_order.free", C), ("first_order.majorana", C), ("first_order.all", C)],
    },
    ModelDescriptor {
        name: "sm-twist",
        summary: "Standard Model twisted by its grading",
        blocks: &["π(a, a′) = ½(I+Γ)a + ½(I−Γ)a′", "ρ the flip, R = I ⊗ γ⁰"],
        twisted: true,
        expected: &[],
    },
    ModelDescriptor {
        name: "manifold-twist",
        summary: "minimal twist of the manifold",
        blocks: &["π(f, g) = diag(f I₂, g I₂)", "ρ the flip, R = γ⁰"],
        twisted: true,
        expected: &[],
    },
    ModelDescriptor {
        name: "doubled-manifold",
        summary: "minimal twist of the manifold times (ℂ², ℂ², 0)",
        blocks: &["π = diag(f, f′, g′, g) on 2-blocks", "twisting operator −Γ, R = I₂ ⊗ γ⁰"],
        twisted: true,
        expected: &[],
    },
    ModelDescriptor {
        name: "ed",
        summary: "minimal twist of electrodynamics",
        blocks: &[
            "finite basis (e_l, e_r, ē_l, ē_r), D_F with d and d̄",
            "π = diag(f, f′, f′, f, g′, g, g, g′) on 2-blocks",
            "twisting operator −Γ, R = I₄ ⊗ γ⁰",
        ],
        twisted: true,
        expected: &[],
    },
];

pub fn descriptor(name: &str) -> Result<&'static ModelDescriptor, ModelError> {
    CATALOG.iter().find(|d| d.name == name).ok_or_else(|| ModelError::Unknown(name.into()))
}

fn construct(name: &str, generations: usize) -> Result<Model, ModelError> {
    descriptor(name)?;
    if generations != 1 && !matches!(name, "sm" | "sm-finite") {
        return Err(ModelError::Generations(generations));
    }
    Ok(match name {
        "manifold" => Model::Real(crate::triples::manifold_triple()),
        "sm-finite" => Model::Real(sm_finite(generations)?),
        "sm" => Model::Real(sm(generations)?),
        "grand" => Model::Real(grand()?),
        "grand-chiral" => Model::Real(grand_chiral()?),
        "grand-broken" => Model::Real(grand_broken()?),
        "bprime" => Model::Twisted(bprime()?),
        "btilde" => Model::Twisted(btilde()?),
        "bsub" => Model::Real(bsub()?),
        "sm-twist" => Model::Twisted(sm_twist()?),
        "manifold-twist" => Model::Twisted(manifold_twist()?),
        "doubled-manifold" => Model::Twisted(doubled_manifold()?),
        "ed" => Model::Twisted(ed()?),
        _ => return Err(ModelError::Unknown(name.into())),
    })
}

/// Builds (or fetches from the cache) a catalog model.
pub fn build_with(name: &str, generations: usize) -> Result<Model, ModelError> {
    static CACHE: OnceLock<Mutex<HashMap<(String, usize), Model>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (name.to_string(), generations);
    if let Some(m) = cache.lock().expect("model cache").get(&key) {
        return Ok(m.clone());
    }
    let m = construct(name, generations)?;
    cache.lock().expect("model cache").insert(key, m.clone());
    Ok(m)
}

pub fn build(name: &str) -> Result<Model, ModelError> {
    build_with(name, 1)
}

fn chirality(i: usize) -> String {
    if i == 0 { "r" } else { "l" }.into()
}

fn pair(i: usize) -> String {
    if i == 0 { "R" } else { "L" }.into()
}

/// Names the indices of each factor by the chirality or flavour pair they carry.
fn labeler(name: &str) -> Box<dyn Fn(usize, usize) -> String> {
    match name {
        "grand" => Box::new(|k, i| if k == 0 { pair(i % 2) } else { chirality(i / 4) }),
        "grand-chiral" => Box::new(|k, i| match k {
            0 | 1 => format!("{}^{}", pair(i), chirality(k)),
            _ => chirality(i / 4),
        }),
        _ => Box::new(|_, _| String::new()),
    }
}

/// Factor structure left by imposing that the algebra commute with the grading.
pub fn grading_break(model: &Model) -> Result<BreakReport, ModelError> {
    let t = model.base();
    let g = t.grading.as_ref().ok_or_else(|| ModelError::Ungraded(t.name.clone()))?;
    Ok(break_by_commutant(t, g, &*labeler(&t.name))?)
}
