mod common;

use std::collections::BTreeSet;

use ncg_core::actions::{
    antisymmetrize, fermionic_kernel, identification, match_template, template_kernel, Identification, KernelMatrix, Subspace, Template,
};
use ncg_core::clifford::OperatorExpr;
use ncg_core::fluctuations::{fluctuate, gauge_transform, selfadjoint_family, Adjointness};
use ncg_core::linalg::Mat;
use ncg_core::models::{build, field_directions, Model};
use ncg_core::scalars::{GaussRat, Kind, Scalar, Symbol};
use ncg_core::triples::AlgebraElement;
use proptest::prelude::*;

const LORENTZ: [(&str, Template); 3] = [("manifold-twist", Template::Weyl), ("doubled-manifold", Template::Weyl), ("ed", Template::Dirac)];

fn fluctuated(model: &Model) -> OperatorExpr {
    let d = model.base().dirac.clone();
    let family = selfadjoint_family(model, &d, Adjointness::Standard).unwrap();
    family.renamed(&field_directions(model.name()).unwrap()).unwrap().operator()
}

fn kernel_symbols(k: &OperatorExpr) -> BTreeSet<Symbol> {
    k.all_entries().iter().flat_map(|s| s.symbols()).collect()
}

fn f0() -> Scalar {
    Scalar::from(Symbol::field("f0", Kind::Real).unwrap())
}

fn permutation_matrix(p: &[usize]) -> Mat {
    // column k of P is e_{p[k]}
    Mat::from_fn(p.len(), p.len(), |i, k| if p[k] == i { Scalar::one() } else { Scalar::zero() })
}

fn small_operator(n: usize) -> impl Strategy<Value = OperatorExpr> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 5 * n * n).prop_map(move |v| {
        let block = |b: usize| {
            Mat::from_fn(n, n, |i, j| {
                let (re, im) = v[b * n * n + i * n + j];
                Scalar::constant(GaussRat::from_parts((re, 1), (im, 1)))
            })
        };
        OperatorExpr::new(block(0), std::array::from_fn(|mu| block(mu + 1)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn antisymmetrization_is_a_projection(k in small_operator(3)) {
        let a = antisymmetrize(&k);
        prop_assert_eq!(antisymmetrize(&a), a.clone());
        prop_assert_eq!(a.transpose_formal(), a.neg());
        prop_assert_eq!(k.transpose_formal().transpose_formal(), k);
    }

    #[test]
    fn kernels_stay_antisymmetric_under_bindings(seed: u64) {
        let mut rng = common::rng(seed);
        for (name, _) in LORENTZ {
            let model = build(name).unwrap();
            let k = fermionic_kernel(&model, &fluctuated(&model), Subspace::Hr).unwrap();
            let b = common::binding(kernel_symbols(&k.kernel), &mut rng);
            let ks = k.substitute(&b).unwrap();
            prop_assert!(ks.kernel.all_entries().iter().all(|s| s.is_constant()));
            prop_assert!(ks.is_antisymmetric(), "{}", name);
        }
    }

    #[test]
    fn matching_ignores_basis_order(seed in 0usize..3, perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle()) {
        let (name, template) = LORENTZ[seed];
        let model = build(name).unwrap();
        let k = fermionic_kernel(&model, &fluctuated(&model), Subspace::Hr).unwrap();
        let id = identification(name, template).unwrap();
        let n = k.kernel.dim();
        let p: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        let pm = permutation_matrix(&p);
        let pk = KernelMatrix { basis: &k.basis * &pm, kernel: k.kernel.map(|m| &(&pm.transpose() * m) * &pm), ..k.clone() };
        let pid = Identification { psi: &id.psi * &pm, psi_dagger: &pm.transpose() * &id.psi_dagger, ..id.clone() };
        let before = match_template(&k, template, &id, &f0()).unwrap();
        let after = match_template(&pk, template, &pid, &f0()).unwrap();
        prop_assert_eq!(before.matched, after.matched);
        prop_assert_eq!(after.residual, before.residual.map(|m| &(&pm.transpose() * m) * &pm));
    }

    #[test]
    fn action_kernel_is_gauge_invariant(seed: u64) {
        let mut rng = common::rng(seed);
        for name in ["doubled-manifold", "ed"] {
            let model = build(name).unwrap();
            let Model::Twisted(t) = &model else { unreachable!() };
            let d = model.base().dirac.clone();
            let family = selfadjoint_family(&model, &d, Adjointness::Standard).unwrap();
            let a = family.one_form().substitute(&common::binding(family.params.iter().copied(), &mut rng)).unwrap();
            let u = common::random_phases(t.base.algebra.factors.len(), &mut rng);

            let rep = |x: &AlgebraElement| t.base.represent(x);
            let ru = rep(&t.rho.apply(&u));
            let left = ru.mul(&ru.conjugate_by(&t.base.j));
            let us = rep(&u.adjoint());
            let right = us.conjugate_by(&t.base.j).mul(&us);
            let da = fluctuate(&model, &d, &a).unwrap();
            let conjugated = OperatorExpr::germ_mul(&left, &da.mul_germ(&right).unwrap()).unwrap();

            let au = gauge_transform(&model, &d, &a, &u).unwrap();
            let transformed = fluctuate(&model, &d, &au).unwrap();
            let k1 = fermionic_kernel(&model, &conjugated, Subspace::Hr).unwrap();
            let k2 = fermionic_kernel(&model, &transformed, Subspace::Hr).unwrap();
            prop_assert_eq!(k1, k2, "{}", name);
        }
    }
}

fn sigma(sign: i64) -> [Mat; 4] {
    let s = |m: &[&[(i64, i64)]]| Mat::from_ints(m).scale(&Scalar::from_int(sign));
    [
        Mat::identity(2),
        s(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
        s(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]),
        s(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
    ]
}

#[test]
fn templates_are_fixed() {
    let i = Scalar::i();
    for (t, sign) in [(Template::Weyl, -1), (Template::WeylRight, 1)] {
        let s = sigma(sign);
        let expected = OperatorExpr::new(Mat::zeros(2, 2), std::array::from_fn(|mu| s[mu].scale(&i)));
        assert_eq!(template_kernel(t).unwrap(), expected, "{}", t.name());
    }
    let w = template_kernel(Template::Dirac).unwrap();
    let (l, r) = (sigma(-1), sigma(1));
    for mu in 0..4 {
        assert_eq!(w.order1[mu], Mat::block_diag(&[l[mu].clone(), r[mu].clone()]).scale(&i));
    }
    let m = Scalar::from(Symbol::intern("m", Kind::Real).unwrap());
    assert_eq!(w.order0.block(0, 2, 2, 2), Mat::identity(2).scale(&-&m));
    assert_eq!(w.order0.block(2, 0, 2, 2), Mat::identity(2).scale(&-&m));
    assert_eq!(template_kernel(Template::Dirac).unwrap(), w);
}
