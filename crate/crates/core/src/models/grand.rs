use std::sync::Arc;

use super::sm::{sm, ALPHA_L, ALPHA_R};
use super::ModelError;
use crate::triples::{AlgebraSpec, EmbedBlock, EmbeddedRep, Embedding, Factor, IndexScheme, Placement, PlacementRep, RealSpectralTriple};
use crate::twists::{spinor_flip, Automorphism, TwistedTriple};

/// Spinor slot values: chirality `s` (r first) and `ṡ`.
pub const S_R: usize = 0;
pub const S_L: usize = 1;

/// Index helper over `C, I, α, s, ṡ` at one generation.
struct Grid(IndexScheme);

impl Grid {
    fn new(t: &RealSpectralTriple) -> Grid {
        Grid(t.scheme.clone())
    }

    fn at(&self, c: usize, i: usize, a: usize, s: usize, sd: usize) -> usize {
        self.0.flatten(&[c, i, a, s, sd])
    }
}

fn pair_alphas(pair: usize) -> [usize; 2] {
    if pair == 0 {
        ALPHA_R
    } else {
        ALPHA_L
    }
}

/// Reuses Hilbert space, `J`, `Γ` and Dirac parts of the one-generation
/// Standard Model with a different algebra.
fn rebuild(name: &str, algebra: AlgebraSpec, placements: Vec<Placement>, parts: &[&str]) -> Result<RealSpectralTriple, ModelError> {
    let base = sm(1)?;
    let rep = PlacementRep::new(base.dim(), placements);
    rep.validate(&algebra)?;
    let kept: Vec<_> = base.parts.iter().filter(|(n, _)| parts.contains(&n.as_str())).cloned().collect();
    let mut t = RealSpectralTriple { name: name.into(), algebra, rep: Arc::new(rep), ..base };
    t = t.with_parts(kept);
    Ok(t)
}

/// `M₄(ℍ) ⊕ M₈(ℂ)`: `Q` acts on `(ṡ, α)` of particles, `M` on `(s, I)` of antiparticles.
pub fn grand() -> Result<RealSpectralTriple, ModelError> {
    let base = sm(1)?;
    let g = Grid::new(&base);
    let alg = AlgebraSpec::new(vec![("Q", Factor::MH(4)), ("M", Factor::MC(8))], true);
    let mut pl = Vec::new();
    for i in 0..4 {
        for s in 0..2 {
            let mut idx = Vec::new();
            for k in 0..4 {
                let (sd, pair) = (k / 2, k % 2);
                for a in pair_alphas(pair) {
                    idx.push(g.at(0, i, a, s, sd));
                }
            }
            pl.push(Placement { factor: 0, conj: false, indices: idx });
        }
    }
    for a in 0..4 {
        for sd in 0..2 {
            let idx = (0..8).map(|k| g.at(1, k % 4, a, k / 4, sd)).collect();
            pl.push(Placement { factor: 1, conj: false, indices: idx });
        }
    }
    rebuild("grand", alg, pl, &["free", "yukawa", "majorana"])
}

/// Chiral variant: quaternions diagonal in `s` with independent `M₂(ℍ)`
/// components per chirality, `M₈(ℂ)` on `(s, I)` of antiparticles.
pub fn grand_chiral() -> Result<RealSpectralTriple, ModelError> {
    let base = sm(1)?;
    let g = Grid::new(&base);
    let alg = AlgebraSpec::new(vec![("Qʳ", Factor::MH(2)), ("Qˡ", Factor::MH(2)), ("M", Factor::MC(8))], true);
    let mut pl = Vec::new();
    for i in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                let idx = (0..4).map(|a| g.at(0, i, a, s, sd)).collect();
                pl.push(Placement { factor: s, conj: false, indices: idx });
            }
        }
    }
    for a in 0..4 {
        for sd in 0..2 {
            let idx = (0..8).map(|k| g.at(1, k % 4, a, k / 4, sd)).collect();
            pl.push(Placement { factor: 2, conj: false, indices: idx });
        }
    }
    rebuild("grand-chiral", alg, pl, &["free", "yukawa", "majorana"])
}

/// Grading-compatible breaking of the grand algebra adapted to the Majorana
/// term: `ℍ_L ⊕ ℍ′_L ⊕ ℂ_R ⊕ ℂ′_R ⊕ M₃(ℂ)_l ⊕ M₃(ℂ)_r`, with `ℂ_R` also
/// acting on the lepton antiparticles of both chiralities.
pub fn grand_broken() -> Result<RealSpectralTriple, ModelError> {
    let base = sm(1)?;
    let g = Grid::new(&base);
    let alg = AlgebraSpec::new(
        vec![("hL", Factor::H), ("hL′", Factor::H), ("cR", Factor::C), ("cR′", Factor::C), ("m3ˡ", Factor::MC(3)), ("m3ʳ", Factor::MC(3))],
        true,
    );
    let mut pl = Vec::new();
    for i in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                let c = 2 + sd;
                pl.push(Placement { factor: c, conj: false, indices: vec![g.at(0, i, ALPHA_R[0], s, sd)] });
                pl.push(Placement { factor: c, conj: true, indices: vec![g.at(0, i, ALPHA_R[1], s, sd)] });
                pl.push(Placement { factor: sd, conj: false, indices: ALPHA_L.iter().map(|&a| g.at(0, i, a, s, sd)).collect() });
            }
        }
    }
    for a in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                pl.push(Placement { factor: 2, conj: false, indices: vec![g.at(1, 0, a, s, sd)] });
                let m = if s == S_L { 4 } else { 5 };
                pl.push(Placement { factor: m, conj: false, indices: (1..4).map(|i| g.at(1, i, a, s, sd)).collect() });
            }
        }
    }
    rebuild("grand-broken", alg, pl, &["free", "yukawa", "majorana"])
}

/// `ℍ_L^l ⊕ ℍ_L^r ⊕ ℍ_R^l ⊕ ℍ_R^r ⊕ M₄(ℂ)` with the flip of chiralities.
pub fn bprime() -> Result<TwistedTriple, ModelError> {
    let base = sm(1)?;
    let g = Grid::new(&base);
    let alg =
        AlgebraSpec::new(vec![("qLˡ", Factor::H), ("qLʳ", Factor::H), ("qRˡ", Factor::H), ("qRʳ", Factor::H), ("m", Factor::MC(4))], true);
    let mut pl = Vec::new();
    for i in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                for pair in 0..2 {
                    // factor order: L^l, L^r, R^l, R^r
                    let f = 2 * (1 - pair) + if s == S_L { 0 } else { 1 };
                    pl.push(Placement {
                        factor: f,
                        conj: false,
                        indices: pair_alphas(pair).iter().map(|&a| g.at(0, i, a, s, sd)).collect(),
                    });
                }
            }
        }
    }
    for a in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                pl.push(Placement { factor: 4, conj: false, indices: (0..4).map(|i| g.at(1, i, a, s, sd)).collect() });
            }
        }
    }
    let t = rebuild("bprime", alg, pl, &["free"])?;
    let rho = Automorphism::swaps(5, &[(0, 1), (2, 3)])?;
    let r = spinor_flip(t.dim());
    Ok(TwistedTriple::new(t, rho, r)?)
}

/// Subalgebra `ℍ_L^l ⊕ ℍ_L^r ⊕ ℂ_R^l ⊕ ℂ_R^r ⊕ (ℂ ⊕ M₃(ℂ))` of the previous
/// one, with the full finite Dirac operator.
pub fn btilde() -> Result<TwistedTriple, ModelError> {
    let base = sm(1)?;
    let g = Grid::new(&base);
    let alg = AlgebraSpec::new(
        vec![("qLˡ", Factor::H), ("qLʳ", Factor::H), ("cRˡ", Factor::C), ("cRʳ", Factor::C), ("c", Factor::C), ("m", Factor::MC(3))],
        true,
    );
    let mut pl = Vec::new();
    for i in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                let off = if s == S_L { 0 } else { 1 };
                pl.push(Placement { factor: off, conj: false, indices: ALPHA_L.iter().map(|&a| g.at(0, i, a, s, sd)).collect() });
                pl.push(Placement { factor: 2 + off, conj: false, indices: vec![g.at(0, i, ALPHA_R[0], s, sd)] });
                pl.push(Placement { factor: 2 + off, conj: true, indices: vec![g.at(0, i, ALPHA_R[1], s, sd)] });
            }
        }
    }
    for a in 0..4 {
        for s in 0..2 {
            for sd in 0..2 {
                pl.push(Placement { factor: 4, conj: false, indices: vec![g.at(1, 0, a, s, sd)] });
                pl.push(Placement { factor: 5, conj: false, indices: (1..4).map(|i| g.at(1, i, a, s, sd)).collect() });
            }
        }
    }
    let t = rebuild("btilde", alg, pl, &["free", "yukawa", "majorana"])?;
    let rho = Automorphism::swaps(6, &[(0, 1), (2, 3)])?;
    let r = spinor_flip(t.dim());
    Ok(TwistedTriple::new(t, rho, r)?)
}

/// `ℍ_L^l ⊕ ℍ_L^r ⊕ ℂ_R^l ⊕ ℂ_R^r ⊕ M₃(ℂ)`.
pub fn bsub_algebra() -> AlgebraSpec {
    AlgebraSpec::new(vec![("qLˡ", Factor::H), ("qLʳ", Factor::H), ("cRˡ", Factor::C), ("cRʳ", Factor::C), ("m", Factor::MC(3))], true)
}

/// Embedding into the `btilde` algebra identifying its lone `ℂ` with `ℂ_R^l`.
pub fn bsub_embedding() -> Embedding {
    let b = |factor| vec![EmbedBlock { factor, conj: false }];
    Embedding { blocks: vec![b(0), b(1), b(2), b(3), b(2), b(4)] }
}

/// The subalgebra acting through the embedding, as an untwisted triple.
pub fn bsub() -> Result<RealSpectralTriple, ModelError> {
    let parent = btilde()?;
    let mut t = parent.base.clone();
    t.name = "bsub".into();
    t.algebra = bsub_algebra();
    t.rep = Arc::new(EmbeddedRep { parent: parent.base.rep.clone(), embedding: bsub_embedding() });
    Ok(t)
}
