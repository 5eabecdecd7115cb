use std::collections::HashMap;

use crate::linalg::{AntilinearOp, LinalgError, Mat};
use crate::scalars::{Scalar, ScalarError, Symbol};

/// Pointwise model of a matrix-valued smooth function: its value and the
/// four first derivatives at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub value: Mat,
    pub grad: [Mat; 4],
}

impl Germ {
    pub fn new(value: Mat, grad: [Mat; 4]) -> Germ {
        Germ { value, grad }
    }

    /// Germ whose gradient is obtained by differentiating the entries
    /// (field symbols get gradient symbols, other symbols are constant).
    pub fn from_value(value: Mat) -> Germ {
        let grad = std::array::from_fn(|mu| value.partial(mu));
        Germ { value, grad }
    }

    pub fn constant(value: Mat) -> Germ {
        let (r, c) = value.shape();
        Germ { value, grad: std::array::from_fn(|_| Mat::zeros(r, c)) }
    }

    pub fn identity(n: usize) -> Germ {
        Germ::constant(Mat::identity(n))
    }

    pub fn zeros(r: usize, c: usize) -> Germ {
        Germ::constant(Mat::zeros(r, c))
    }

    pub fn shape(&self) -> (usize, usize) {
        self.value.shape()
    }

    pub fn map(&self, f: impl Fn(&Mat) -> Mat) -> Germ {
        Germ { value: f(&self.value), grad: std::array::from_fn(|mu| f(&self.grad[mu])) }
    }

    pub fn try_mul(&self, o: &Germ) -> Result<Germ, LinalgError> {
        let value = self.value.try_mul(&o.value)?;
        let mut grad: [Mat; 4] = Default::default();
        for mu in 0..4 {
            grad[mu] = &self.grad[mu] * &o.value + &self.value * &o.grad[mu];
        }
        Ok(Germ { value, grad })
    }

    pub fn mul(&self, o: &Germ) -> Germ {
        self.try_mul(o).expect("germ shape mismatch")
    }

    pub fn add(&self, o: &Germ) -> Germ {
        Germ { value: &self.value + &o.value, grad: std::array::from_fn(|mu| &self.grad[mu] + &o.grad[mu]) }
    }

    pub fn sub(&self, o: &Germ) -> Germ {
        Germ { value: &self.value - &o.value, grad: std::array::from_fn(|mu| &self.grad[mu] - &o.grad[mu]) }
    }

    pub fn scale(&self, s: &Scalar) -> Germ {
        self.map(|m| m.scale(s))
    }

    pub fn adjoint(&self) -> Germ {
        self.map(Mat::adjoint)
    }

    pub fn conj(&self) -> Germ {
        self.map(Mat::conj)
    }

    pub fn transpose(&self) -> Germ {
        self.map(Mat::transpose)
    }

    /// `M ⊗ self`.
    pub fn kron_left(&self, m: &Mat) -> Germ {
        self.map(|g| m.kron(g))
    }

    /// `self ⊗ M`.
    pub fn kron_right(&self, m: &Mat) -> Germ {
        self.map(|g| g.kron(m))
    }

    /// `J·self·J⁻¹` for a unitary (anti)linear `J`.
    pub fn conjugate_by(&self, j: &AntilinearOp) -> Germ {
        self.map(|m| j.conjugate_unitary(m))
    }

    /// `U·self·U†`.
    pub fn conjugate_mat(&self, u: &Mat) -> Germ {
        let ua = u.adjoint();
        self.map(|m| &(u * m) * &ua)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.grad.iter().all(Mat::is_zero)
    }

    pub fn substitute(&self, b: &HashMap<Symbol, Scalar>) -> Result<Germ, ScalarError> {
        Ok(Germ {
            value: self.value.substitute(b)?,
            grad: [self.grad[0].substitute(b)?, self.grad[1].substitute(b)?, self.grad[2].substitute(b)?, self.grad[3].substitute(b)?],
        })
    }

    pub fn substitute_unchecked(&self, b: &HashMap<Symbol, Scalar>) -> Germ {
        self.map(|m| m.substitute_unchecked(b))
    }
}
