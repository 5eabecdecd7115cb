//! Gamma matrices, first-order differential operators and the germ model.

mod gamma;
mod germ;
mod operator;

pub use gamma::{charge_conjugation, pauli, GammaBasis, GAMMA_BASIS_NAME};
pub use germ::Germ;
pub use operator::{germ_commutator, is_bounded, OperatorExpr};

use crate::linalg::{solve_linear_with_prefix, LinalgError, Mat, SolutionSpace};
use crate::scalars::{Kind, Scalar, Symbol};

/// Generic 4×4 matrices `A`, `B` with `A γ^μ = γ^μ B` for all μ, solved exactly.
#[derive(Clone, Debug)]
pub struct IntertwinerSolution {
    pub space: SolutionSpace,
    /// `A` and `B` with the general solution substituted.
    pub a: Mat,
    pub b: Mat,
    /// Number of scalar equations in the stacked system.
    pub equations: usize,
}

pub fn solve_intertwiner_constraint() -> Result<IntertwinerSolution, LinalgError> {
    let g = GammaBasis::new();
    let generic = |p: &str| -> (Mat, Vec<Symbol>) {
        let mut syms = Vec::new();
        let m = Mat::from_fn(4, 4, |i, j| {
            let s = Symbol::intern(&format!("{p}{i}{j}"), Kind::Complex).expect("intertwiner symbol");
            Scalar::from(s)
        });
        for i in 0..4 {
            for j in 0..4 {
                syms.push(Symbol::lookup(&format!("{p}{i}{j}")).expect("registered"));
            }
        }
        (m, syms)
    };
    let (a, mut unknowns) = generic("Aiw");
    let (b, ub) = generic("Biw");
    unknowns.extend(ub);
    let mut eqs = Vec::new();
    for mu in 0..4 {
        let d = &(&a * &g.gamma[mu]) - &(&g.gamma[mu] * &b);
        for i in 0..4 {
            for j in 0..4 {
                eqs.push(d.get(i, j).clone());
            }
        }
    }
    let equations = eqs.len();
    let space = solve_linear_with_prefix(&eqs, &unknowns, "λ")?;
    let vals = space.values();
    Ok(IntertwinerSolution { a: a.substitute_unchecked(&vals), b: b.substitute_unchecked(&vals), space, equations })
}
