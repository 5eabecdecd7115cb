use super::{LinalgError, Mat};

/// A linear (`conj == false`) or antilinear (`conj == true`) operator
/// `ψ ↦ M·ψ` or `ψ ↦ M·conj(ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntilinearOp {
    pub matrix: Mat,
    pub conj: bool,
}

impl AntilinearOp {
    pub fn antilinear(matrix: Mat) -> Self {
        AntilinearOp { matrix, conj: true }
    }

    pub fn linear(matrix: Mat) -> Self {
        AntilinearOp { matrix, conj: false }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `self ∘ other`; the conjugation flags compose by parity.
    pub fn compose(&self, other: &AntilinearOp) -> AntilinearOp {
        let rhs = if self.conj { other.matrix.conj() } else { other.matrix.clone() };
        AntilinearOp { matrix: &self.matrix * &rhs, conj: self.conj ^ other.conj }
    }

    /// Operator inverse: `(M∘conj)⁻¹ = conj(M⁻¹)∘conj`.
    pub fn inverse(&self) -> Result<AntilinearOp, LinalgError> {
        let inv = self.matrix.inverse()?;
        Ok(AntilinearOp { matrix: if self.conj { inv.conj() } else { inv }, conj: self.conj })
    }

    /// `O·X·O⁻¹ = M·conj(X)·M⁻¹` for a linear operator `X`.
    pub fn conjugate(&self, x: &Mat) -> Mat {
        let inner = if self.conj { x.conj() } else { x.clone() };
        let inv = self.matrix.inverse().expect("invertible operator");
        &(&self.matrix * &inner) * &inv
    }

    /// `O·X·O⁻¹` using `O⁻¹ = O†`, valid when `matrix` is unitary; avoids inversion.
    pub fn conjugate_unitary(&self, x: &Mat) -> Mat {
        let inner = if self.conj { x.conj() } else { x.clone() };
        &(&self.matrix * &inner) * &self.matrix.adjoint()
    }

    pub fn apply(&self, v: &Mat) -> Mat {
        &self.matrix * &if self.conj { v.conj() } else { v.clone() }
    }

    /// `O²` as a linear matrix.
    pub fn square(&self) -> Mat {
        self.compose(self).matrix
    }

    pub fn is_unitary(&self) -> bool {
        self.matrix.is_unitary()
    }

    pub fn kron(&self, other: &AntilinearOp) -> Result<AntilinearOp, LinalgError> {
        if self.conj != other.conj {
            return Err(LinalgError::MixedLinearity);
        }
        Ok(AntilinearOp { matrix: self.matrix.kron(&other.matrix), conj: self.conj })
    }
}
