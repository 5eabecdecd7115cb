use std::sync::Arc;

use super::ModelError;
use crate::clifford::OperatorExpr;
use crate::linalg::{AntilinearOp, Mat};
use crate::scalars::{sym, Kind, Scalar};
use crate::triples::{manifold_triple, product_triple, AlgebraSpec, Factor, IndexScheme, Placement, PlacementRep, RealSpectralTriple};

/// Positions of the flavour index `α = (1̇, 2̇, 1, 2)`: right pair then left pair.
pub const ALPHA_R: [usize; 2] = [0, 1];
pub const ALPHA_L: [usize; 2] = [2, 3];

pub fn sm_scheme(generations: usize) -> IndexScheme {
    let gens: Vec<String> = (1..=generations).map(|n| n.to_string()).collect();
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    let mut s = IndexScheme::new(&[("C", &["0", "1"]), ("I", &["0", "1", "2", "3"]), ("α", &["1̇", "2̇", "1", "2"])]);
    if generations > 1 {
        s = s.product(&IndexScheme::new(&[("n", &gens)]));
    }
    s
}

/// `A_F = ℂ ⊕ ℍ ⊕ M₃(ℂ)`.
pub fn sm_algebra() -> AlgebraSpec {
    AlgebraSpec::new(vec![("λ", Factor::C), ("q", Factor::H), ("m", Factor::MC(3))], false)
}

/// Flat index helper for the scheme `C, I, α[, n]`.
pub(crate) fn sm_index(s: &IndexScheme, c: usize, i: usize, a: usize, n: usize) -> usize {
    if s.slots.len() == 4 {
        s.flatten(&[c, i, a, n])
    } else {
        s.flatten(&[c, i, a])
    }
}

/// Real structure exchanging particles and antiparticles, composed with conjugation.
pub fn particle_swap(s: &IndexScheme) -> AntilinearOp {
    let n = s.dim();
    let mut m = Mat::zeros(n, n);
    for k in 0..n {
        let mut v = s.unflatten(k);
        v[0] = 1 - v[0];
        m.set(s.flatten(&v), k, Scalar::one());
    }
    AntilinearOp::antilinear(m)
}

/// `+1` on left particles and right antiparticles, `−1` elsewhere.
pub fn sm_grading(s: &IndexScheme) -> Mat {
    let d: Vec<Scalar> = (0..s.dim())
        .map(|k| {
            let v = s.unflatten(k);
            let left = ALPHA_L.contains(&v[2]);
            if (v[0] == 0) == left {
                Scalar::one()
            } else {
                -Scalar::one()
            }
        })
        .collect();
    Mat::diag(&d)
}

/// Yukawa block: per generation pair and isospin component, the coupling
/// between right and left flavours, hermitian on particles and conjugated
/// on antiparticles.
pub fn sm_yukawa(s: &IndexScheme, generations: usize) -> Mat {
    let n = s.dim();
    let mut d = Mat::zeros(n, n);
    let names = [["Υν", "Υe"], ["Υu", "Υd"]];
    for i in 0..4 {
        let kind = if i == 0 { 0 } else { 1 };
        for comp in 0..2 {
            for g in 0..generations {
                for h in 0..generations {
                    let base = names[kind][comp];
                    let name = if generations == 1 { base.to_string() } else { format!("{base}{g}{h}") };
                    let y = sym(&name, Kind::Complex);
                    let r = sm_index(s, 0, i, ALPHA_R[comp], g);
                    let l = sm_index(s, 0, i, ALPHA_L[comp], h);
                    d.set(r, l, y.clone());
                    d.set(l, r, y.conj());
                    let ra = sm_index(s, 1, i, ALPHA_R[comp], g);
                    let la = sm_index(s, 1, i, ALPHA_L[comp], h);
                    d.set(ra, la, y.conj());
                    d.set(la, ra, y);
                }
            }
        }
    }
    d
}

/// Majorana block: right neutrino particle to right neutrino antiparticle.
/// One real mass at one generation, a symmetric complex matrix otherwise.
pub fn sm_majorana(s: &IndexScheme, generations: usize) -> Mat {
    let n = s.dim();
    let mut d = Mat::zeros(n, n);
    for g in 0..generations {
        for h in 0..generations {
            let k = if generations == 1 {
                sym("kR", Kind::Real)
            } else {
                let (a, b) = if g <= h { (g, h) } else { (h, g) };
                sym(&format!("kR{a}{b}"), Kind::Complex)
            };
            let p = sm_index(s, 0, 0, ALPHA_R[0], g);
            let a = sm_index(s, 1, 0, ALPHA_R[0], h);
            d.set(p, a, k.clone());
            d.set(a, p, k.conj());
        }
    }
    d
}

/// Finite Standard Model triple on `ℂ^{32N}`.
pub fn sm_finite(generations: usize) -> Result<RealSpectralTriple, ModelError> {
    if generations != 1 && generations != 3 {
        return Err(ModelError::Generations(generations));
    }
    let s = sm_scheme(generations);
    let alg = sm_algebra();
    let mut placements = Vec::new();
    for g in 0..generations {
        for i in 0..4 {
            placements.push(Placement { factor: 0, conj: false, indices: vec![sm_index(&s, 0, i, ALPHA_R[0], g)] });
            placements.push(Placement { factor: 0, conj: true, indices: vec![sm_index(&s, 0, i, ALPHA_R[1], g)] });
            placements.push(Placement { factor: 1, conj: false, indices: ALPHA_L.iter().map(|&a| sm_index(&s, 0, i, a, g)).collect() });
        }
        for a in 0..4 {
            placements.push(Placement { factor: 0, conj: false, indices: vec![sm_index(&s, 1, 0, a, g)] });
            placements.push(Placement { factor: 2, conj: false, indices: (1..4).map(|i| sm_index(&s, 1, i, a, g)).collect() });
        }
    }
    let rep = PlacementRep::new(s.dim(), placements);
    rep.validate(&alg)?;
    let base = RealSpectralTriple {
        name: if generations == 1 { "sm-finite".into() } else { format!("sm-finite-{generations}") },
        algebra: alg,
        rep: Arc::new(rep),
        dirac: OperatorExpr::zero(s.dim()),
        parts: Vec::new(),
        j: particle_swap(&s),
        grading: Some(sm_grading(&s)),
        scheme: s.clone(),
    };
    Ok(base.with_parts(vec![
        ("yukawa".into(), OperatorExpr::from_mat(sm_yukawa(&s, generations))),
        ("majorana".into(), OperatorExpr::from_mat(sm_majorana(&s, generations))),
    ]))
}

/// Almost-commutative Standard Model: manifold germ triple times the finite one.
pub fn sm(generations: usize) -> Result<RealSpectralTriple, ModelError> {
    let mut t = product_triple(&manifold_triple(), &sm_finite(generations)?)?;
    t.name = if generations == 1 { "sm".into() } else { format!("sm-{generations}") };
    Ok(t)
}
