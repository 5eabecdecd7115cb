use std::sync::Arc;

use super::sm::sm;
use super::ModelError;
use crate::clifford::{GammaBasis, OperatorExpr};
use crate::linalg::{AntilinearOp, Mat};
use crate::scalars::{sym, Kind, Scalar};
use crate::triples::{manifold_triple, product_triple, AlgebraSpec, Factor, IndexScheme, Placement, PlacementRep, RealSpectralTriple};
use crate::twists::{minimal_twist, spinor_flip, twist_by_grading, TwistedTriple};

fn int_diag(d: &[i64]) -> Mat {
    Mat::diag(&d.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
}

fn perm(n: usize, pairs: &[(usize, usize)]) -> Mat {
    let mut m = Mat::identity(n);
    for &(i, j) in pairs {
        m.set(i, i, Scalar::zero());
        m.set(j, j, Scalar::zero());
        m.set(i, j, Scalar::one());
        m.set(j, i, Scalar::one());
    }
    m
}

/// Minimal twist of the manifold: `π(f, g) = diag(f I₂, g I₂)`, `R = γ⁰`.
pub fn manifold_twist() -> Result<TwistedTriple, ModelError> {
    let m = manifold_triple();
    let gt = GammaBasis::new().gamma5.scale(&-Scalar::one());
    let mut t = minimal_twist(&m, &gt, &GammaBasis::new().gamma[0])?;
    t.base.name = "manifold-twist".into();
    t.base.algebra.factors[1].0 = "g".into();
    Ok(t)
}

/// `(ℂ², ℂ², 0)` with `a = diag(f, g)`, `Γ_F = diag(1, −1)` and `J_F` the swap.
pub fn two_point() -> RealSpectralTriple {
    let alg = AlgebraSpec::new(vec![("f", Factor::C), ("g", Factor::C)], false);
    let rep = PlacementRep::new(
        2,
        vec![Placement { factor: 0, conj: false, indices: vec![0] }, Placement { factor: 1, conj: false, indices: vec![1] }],
    );
    RealSpectralTriple {
        name: "two-point".into(),
        algebra: alg,
        rep: Arc::new(rep),
        dirac: OperatorExpr::zero(2),
        parts: Vec::new(),
        j: AntilinearOp::antilinear(perm(2, &[(0, 1)])),
        grading: Some(int_diag(&[1, -1])),
        scheme: IndexScheme::new(&[("e", &["e", "ē"])]),
    }
}

/// Twisted product of the manifold with the two-point space, twisting
/// operator `−Γ` and `R = γ⁰ ⊗ I₂`.
pub fn doubled_manifold() -> Result<TwistedTriple, ModelError> {
    let p = product_triple(&manifold_triple(), &two_point())?;
    let gt = p.grading_or_err()?.scale(&-Scalar::one());
    let mut t = minimal_twist(&p, &gt, &spinor_flip(p.dim()))?;
    t.base.name = "doubled-manifold".into();
    Ok(t)
}

/// Finite part of electrodynamics on `(e_l, e_r, ē_l, ē_r)`.
pub fn ed_finite() -> RealSpectralTriple {
    let alg = AlgebraSpec::new(vec![("f", Factor::C), ("g", Factor::C)], false);
    let rep = PlacementRep::new(
        4,
        vec![
            Placement { factor: 0, conj: false, indices: vec![0] },
            Placement { factor: 0, conj: false, indices: vec![1] },
            Placement { factor: 1, conj: false, indices: vec![2] },
            Placement { factor: 1, conj: false, indices: vec![3] },
        ],
    );
    let d = sym("d", Kind::Complex);
    let mut df = Mat::zeros(4, 4);
    df.set(0, 1, d.clone());
    df.set(1, 0, d.conj());
    df.set(2, 3, d.conj());
    df.set(3, 2, d);
    let base = RealSpectralTriple {
        name: "ed-finite".into(),
        algebra: alg,
        rep: Arc::new(rep),
        dirac: OperatorExpr::zero(4),
        parts: Vec::new(),
        j: AntilinearOp::antilinear(perm(4, &[(0, 2), (1, 3)])),
        grading: Some(int_diag(&[1, -1, -1, 1])),
        scheme: IndexScheme::new(&[("e", &["e_l", "e_r", "ē_l", "ē_r"])]),
    };
    base.with_parts(vec![("mass".into(), OperatorExpr::from_mat(df))])
}

/// `diag(1, −1, 1, −1)` on the finite space of electrodynamics.
pub fn ed_i_prime() -> Mat {
    int_diag(&[1, -1, 1, -1])
}

/// `diag(1, 1, −1, −1)` on the finite space of electrodynamics.
pub fn ed_i_second() -> Mat {
    int_diag(&[1, 1, -1, -1])
}

/// Twisted electrodynamics: twisting operator `−Γ`, `R = γ⁰ ⊗ I₄`.
pub fn ed() -> Result<TwistedTriple, ModelError> {
    let p = product_triple(&manifold_triple(), &ed_finite())?;
    let gt = p.grading_or_err()?.scale(&-Scalar::one());
    let mut t = minimal_twist(&p, &gt, &spinor_flip(p.dim()))?;
    t.base.name = "ed".into();
    Ok(t)
}

/// Standard Model twisted by its grading, `R = I ⊗ γ⁰`.
pub fn sm_twist() -> Result<TwistedTriple, ModelError> {
    let s = sm(1)?;
    let mut t = twist_by_grading(&s, &spinor_flip(s.dim()))?;
    t.base.name = "sm-twist".into();
    Ok(t)
}

/// Basis of the `+1` eigenspace of `I_k ⊗ γ⁰`: columns `e_k ⊗ (ζ; ζ)` with
/// `ζ` running over the two unit Weyl spinors, ordered by `k` then `ζ`.
/// The vectors are not normalized.
pub fn hr_basis(dim: usize) -> Mat {
    let k = dim / 4;
    let mut v = Mat::zeros(dim, 2 * k);
    for a in 0..k {
        for z in 0..2 {
            v.set(4 * a + z, 2 * a + z, Scalar::one());
            v.set(4 * a + 2 + z, 2 * a + z, Scalar::one());
        }
    }
    v
}

/// Unit vectors spanning the `+1` eigenspace of a diagonal grading.
pub fn hplus_basis(grading: &Mat) -> Result<Mat, ModelError> {
    let n = grading.rows();
    let mut cols = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && !grading.get(i, j).is_zero() {
                return Err(ModelError::NotDiagonal);
            }
        }
        if grading.get(i, i).is_one() {
            cols.push(i);
        }
    }
    let mut v = Mat::zeros(n, cols.len());
    for (c, &i) in cols.iter().enumerate() {
        v.set(i, c, Scalar::one());
    }
    Ok(v)
}

/// `−iγ⁵γ^μ`, the direction of the field `f_μ`.
fn f_direction(mu: usize) -> Mat {
    let g = GammaBasis::new();
    (&g.gamma5 * &g.gamma[mu]).scale(&-Scalar::i())
}

/// Named directions of the selfadjoint fluctuations of the Lorentzian
/// models: `f_μ` along `−i X ⊗ γ⁵γ^μ` and `g_μ` along `Y ⊗ γ^μ`. For
/// electrodynamics `Y = −I″`, so that `g_μ` enters as `𝒟_μ = ∂_μ − i g_μ` on
/// the electron.
pub fn field_directions(name: &str) -> Option<Vec<(String, Mat)>> {
    let g = GammaBasis::new();
    let (x, y) = match name {
        "manifold-twist" => (Mat::identity(1), None),
        "doubled-manifold" => (Mat::identity(2), Some(int_diag(&[1, -1]))),
        "ed" => (ed_i_prime(), Some(ed_i_second().scale(&-Scalar::one()))),
        _ => return None,
    };
    let mut out: Vec<(String, Mat)> = (0..4).map(|mu| (format!("f{mu}"), x.kron(&f_direction(mu)))).collect();
    if let Some(y) = y {
        out.extend((0..4).map(|mu| (format!("g{mu}"), y.kron(&g.gamma[mu]))));
    }
    Some(out)
}
