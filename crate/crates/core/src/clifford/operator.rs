use std::collections::HashMap;

use serde::Serialize;

use super::{GammaBasis, Germ};
use crate::linalg::{AntilinearOp, ConstraintSet, LinalgError, Mat};
use crate::scalars::{Scalar, ScalarError, Symbol};

/// First-order formal differential operator `C + Σ_μ B_μ ∂_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorExpr {
    /// Degree-0 (bounded) part `C`.
    pub order0: Mat,
    /// Coefficients `B_μ` of `∂_μ`.
    pub order1: [Mat; 4],
}

impl OperatorExpr {
    pub fn zero(n: usize) -> OperatorExpr {
        OperatorExpr::from_mat(Mat::zeros(n, n))
    }

    pub fn from_mat(m: Mat) -> OperatorExpr {
        let (r, c) = m.shape();
        OperatorExpr { order0: m, order1: std::array::from_fn(|_| Mat::zeros(r, c)) }
    }

    pub fn new(order0: Mat, order1: [Mat; 4]) -> OperatorExpr {
        OperatorExpr { order0, order1 }
    }

    /// Free Dirac operator `−i Σ γ^μ ∂_μ` (flat germ model, no spin connection).
    pub fn dirac_free() -> OperatorExpr {
        let g = GammaBasis::new();
        let mi = -Scalar::i();
        OperatorExpr { order0: Mat::zeros(4, 4), order1: std::array::from_fn(|mu| g.gamma[mu].scale(&mi)) }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.order0.shape()
    }

    pub fn dim(&self) -> usize {
        self.order0.rows()
    }

    pub fn map(&self, f: impl Fn(&Mat) -> Mat) -> OperatorExpr {
        OperatorExpr { order0: f(&self.order0), order1: std::array::from_fn(|mu| f(&self.order1[mu])) }
    }

    pub fn zip(&self, o: &OperatorExpr, f: impl Fn(&Mat, &Mat) -> Mat) -> OperatorExpr {
        OperatorExpr { order0: f(&self.order0, &o.order0), order1: std::array::from_fn(|mu| f(&self.order1[mu], &o.order1[mu])) }
    }

    pub fn add(&self, o: &OperatorExpr) -> OperatorExpr {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &OperatorExpr) -> OperatorExpr {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> OperatorExpr {
        self.map(|a| -a)
    }

    pub fn scale(&self, s: &Scalar) -> OperatorExpr {
        self.map(|a| a.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.order0.is_zero() && self.is_order0()
    }

    /// True when all `∂` coefficients vanish.
    pub fn is_order0(&self) -> bool {
        self.order1.iter().all(Mat::is_zero)
    }

    /// `O·F = C·F + Σ B_μ(∂_μF) + Σ B_μF ∂_μ`.
    pub fn mul_germ(&self, f: &Germ) -> Result<OperatorExpr, LinalgError> {
        let mut c = self.order0.try_mul(&f.value)?;
        let mut b: [Mat; 4] = Default::default();
        for mu in 0..4 {
            if self.order1[mu].is_zero() {
                b[mu] = Mat::zeros(self.order0.rows(), f.value.cols());
                continue;
            }
            c = &c + &self.order1[mu].try_mul(&f.grad[mu])?;
            b[mu] = self.order1[mu].try_mul(&f.value)?;
        }
        Ok(OperatorExpr { order0: c, order1: b })
    }

    /// `F·O = F·C + Σ F·B_μ ∂_μ`.
    pub fn germ_mul(f: &Germ, o: &OperatorExpr) -> Result<OperatorExpr, LinalgError> {
        let c = f.value.try_mul(&o.order0)?;
        let mut b: [Mat; 4] = Default::default();
        for mu in 0..4 {
            b[mu] = f.value.try_mul(&o.order1[mu])?;
        }
        Ok(OperatorExpr { order0: c, order1: b })
    }

    /// Right multiplication by a matrix-valued function (entries differentiated).
    pub fn mul_mat(&self, m: &Mat) -> OperatorExpr {
        self.mul_germ(&Germ::from_value(m.clone())).expect("shape mismatch")
    }

    pub fn mat_mul(m: &Mat, o: &OperatorExpr) -> OperatorExpr {
        OperatorExpr::germ_mul(&Germ::from_value(m.clone()), o).expect("shape mismatch")
    }

    /// Formal adjoint with `∂_μ† = −∂_μ`:
    /// `(C + B∂)† = C† − Σ(∂_μ B_μ†) − Σ B_μ† ∂_μ`.
    pub fn adjoint(&self) -> OperatorExpr {
        let mut c = self.order0.adjoint();
        let mut b: [Mat; 4] = Default::default();
        for mu in 0..4 {
            let bd = self.order1[mu].adjoint();
            c = &c - &bd.partial(mu);
            b[mu] = -&bd;
        }
        OperatorExpr { order0: c, order1: b }
    }

    /// Formal transpose of a bilinear kernel, same integration-by-parts rule.
    pub fn transpose_formal(&self) -> OperatorExpr {
        let mut c = self.order0.transpose();
        let mut b: [Mat; 4] = Default::default();
        for mu in 0..4 {
            let bt = self.order1[mu].transpose();
            c = &c - &bt.partial(mu);
            b[mu] = -&bt;
        }
        OperatorExpr { order0: c, order1: b }
    }

    /// `J·O·J⁻¹` for unitary (anti)linear `J`; `∂` is real so only coefficients are conjugated.
    pub fn conjugate_by(&self, j: &AntilinearOp) -> OperatorExpr {
        self.map(|m| j.conjugate_unitary(m))
    }

    /// `U·O·U†` for a constant unitary `U`.
    pub fn conjugate_mat(&self, u: &Mat) -> OperatorExpr {
        let ua = u.adjoint();
        self.map(|m| &(u * m) * &ua)
    }

    /// `M ⊗ O`.
    pub fn kron_left(&self, m: &Mat) -> OperatorExpr {
        self.map(|c| m.kron(c))
    }

    /// `O ⊗ M`.
    pub fn kron_right(&self, m: &Mat) -> OperatorExpr {
        self.map(|c| c.kron(m))
    }

    /// Restriction `Vᵀ·O·W` of a kernel to column bases `V`, `W`.
    pub fn restrict(&self, v: &Mat, w: &Mat) -> OperatorExpr {
        let vt = v.transpose();
        self.map(|c| &(&vt * c) * w)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> OperatorExpr {
        self.map(|c| c.select(rows, cols))
    }

    pub fn substitute(&self, b: &HashMap<Symbol, Scalar>) -> Result<OperatorExpr, ScalarError> {
        let order0 = self.order0.substitute(b)?;
        let mut order1: [Mat; 4] = Default::default();
        for mu in 0..4 {
            order1[mu] = self.order1[mu].substitute(b)?;
        }
        Ok(OperatorExpr { order0, order1 })
    }

    pub fn substitute_unchecked(&self, b: &HashMap<Symbol, Scalar>) -> OperatorExpr {
        self.map(|m| m.substitute_unchecked(b))
    }

    /// Plane-wave reduction in direction `mu`: `∂_μ ↦ i·k`.
    pub fn plane_wave(&self, mu: usize, k: &Scalar) -> OperatorExpr {
        let mut out = self.clone();
        let ik = Scalar::i() * k;
        out.order0 = &out.order0 + &self.order1[mu].scale(&ik);
        out.order1[mu] = Mat::zeros(self.order0.rows(), self.order0.cols());
        out
    }

    /// Stacks `[C; B₀; B₁; B₂; B₃]` into one matrix for spanning.
    pub fn flatten(&self) -> Mat {
        let (r, c) = self.shape();
        let mut m = Mat::zeros(5 * r, c);
        m.set_block(0, 0, &self.order0);
        for mu in 0..4 {
            m.set_block((mu + 1) * r, 0, &self.order1[mu]);
        }
        m
    }

    pub fn unflatten(m: &Mat) -> OperatorExpr {
        let r = m.rows() / 5;
        let c = m.cols();
        OperatorExpr { order0: m.block(0, 0, r, c), order1: std::array::from_fn(|mu| m.block((mu + 1) * r, 0, r, c)) }
    }

    /// All entry polynomials of the `∂` coefficients.
    pub fn order1_entries(&self) -> Vec<Scalar> {
        self.order1.iter().flat_map(|m| m.entries().map(|(_, _, s)| s.clone()).collect::<Vec<_>>()).collect()
    }

    /// All entry polynomials of every component.
    pub fn all_entries(&self) -> Vec<Scalar> {
        let mut v: Vec<Scalar> = self.order0.entries().map(|(_, _, s)| s.clone()).collect();
        v.extend(self.order1_entries());
        v
    }
}

/// `[D, f]_ρ = D·f − ρ(f)·D`; untwisted when `rho_f` is `None`.
pub fn germ_commutator(d: &OperatorExpr, f: &Germ, rho_f: Option<&Germ>) -> Result<OperatorExpr, LinalgError> {
    let left = d.mul_germ(f)?;
    let right = OperatorExpr::germ_mul(rho_f.unwrap_or(f), d)?;
    Ok(left.sub(&right))
}

/// Boundedness: true iff no `∂` survives. Otherwise the entries of the `∂`
/// coefficients are returned as the conditions restoring boundedness.
pub fn is_bounded(o: &OperatorExpr) -> (bool, ConstraintSet) {
    let c = ConstraintSet::from_polys(o.order1_entries());
    (o.is_order0(), c)
}
