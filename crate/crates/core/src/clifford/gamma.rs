use crate::linalg::{AntilinearOp, Mat};
use crate::scalars::Scalar;

/// Name of the gamma-matrix convention, echoed in reports.
pub const GAMMA_BASIS_NAME: &str = "chiral-euclidean: sigma=(1,-i sigma_j), sigma_bar=(1,i sigma_j), spinor order (r,l)";

/// Euclidean gamma matrices in the chiral basis.
///
/// `γ^μ = [[0, σ^μ], [σ̄^μ, 0]]` with `σ^μ = (I, −iσ_j)` and `σ̄^μ = (I, iσ_j)`.
/// The first 2×2 block is the right-handed one, so `γ⁵ = γ⁰γ¹γ²γ³ = diag(−I₂, I₂)`.
#[derive(Clone, Debug)]
pub struct GammaBasis {
    pub gamma: [Mat; 4],
    pub gamma5: Mat,
    pub sigma: [Mat; 4],
    pub sigma_bar: [Mat; 4],
}

/// Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> [Mat; 3] {
    [
        Mat::from_ints(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
        Mat::from_ints(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]),
        Mat::from_ints(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
    ]
}

impl GammaBasis {
    pub fn new() -> GammaBasis {
        let p = pauli();
        let i2 = Mat::identity(2);
        let mi = Scalar::i();
        let sigma = [i2.clone(), p[0].scale(&-&mi), p[1].scale(&-&mi), p[2].scale(&-&mi)];
        let sigma_bar = [i2.clone(), p[0].scale(&mi), p[1].scale(&mi), p[2].scale(&mi)];
        let gamma: [Mat; 4] = std::array::from_fn(|mu| {
            let mut g = Mat::zeros(4, 4);
            g.set_block(0, 2, &sigma[mu]);
            g.set_block(2, 0, &sigma_bar[mu]);
            g
        });
        let gamma5 = &(&(&gamma[0] * &gamma[1]) * &gamma[2]) * &gamma[3];
        GammaBasis { gamma, gamma5, sigma, sigma_bar }
    }

    /// Charge conjugation `𝒥 = iγ⁰γ² ∘ conj`.
    pub fn charge_conjugation(&self) -> AntilinearOp {
        AntilinearOp::antilinear((&self.gamma[0] * &self.gamma[2]).scale(&Scalar::i()))
    }
}

impl Default for GammaBasis {
    fn default() -> Self {
        Self::new()
    }
}

pub fn charge_conjugation() -> AntilinearOp {
    GammaBasis::new().charge_conjugation()
}
