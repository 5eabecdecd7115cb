mod common;

use std::sync::OnceLock;

use ncg_core::fluctuations::{
    check_transparency, fluctuate, gauge_transform, one_form_space, selfadjoint_family, Adjointness, FluctuationFamily,
};
use ncg_core::linalg::real_span_basis;
use ncg_core::models::{build, restrict, Model};
use ncg_core::twists::rho_adjoint;
use proptest::prelude::*;

const ABELIAN: [&str; 4] = ["manifold", "manifold-twist", "doubled-manifold", "ed"];

struct Case {
    model: Model,
    family: FluctuationFamily,
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for name in ["manifold-twist", "doubled-manifold", "ed", "sm-finite"] {
            let model = build(name).unwrap();
            let d = model.base().dirac.clone();
            let mut adjs = vec![Adjointness::Standard];
            if model.twisted().is_some() {
                adjs.push(Adjointness::Rho);
            }
            for adj in adjs {
                let family = selfadjoint_family(&model, &d, adj).unwrap();
                out.push(Case { model: model.clone(), family });
            }
        }
        out
    })
}

fn is_selfadjoint(case: &Case, x: &ncg_core::linalg::Mat) -> bool {
    match (case.family.adjointness, &case.model) {
        (Adjointness::Standard, _) => x.is_hermitian(),
        (Adjointness::Rho, Model::Twisted(t)) => &rho_adjoint(t, x) == x,
        (Adjointness::Rho, Model::Real(_)) => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_binding_is_selfadjoint(seed: u64) {
        let mut rng = common::rng(seed);
        for case in cases() {
            let x = case.family.fluctuation();
            let x = x.substitute(&common::binding(x.symbols(), &mut rng)).unwrap();
            prop_assert!(x.is_constant());
            prop_assert!(is_selfadjoint(case, &x), "{} {:?}", case.model.name(), case.family.adjointness);
        }
    }

    #[test]
    fn gauge_transformations_compose(seed: u64) {
        let mut rng = common::rng(seed);
        for name in ABELIAN {
            let model = build(name).unwrap();
            let d = model.base().dirac.clone();
            let space = one_form_space(&model, &d).unwrap();
            let (params, a) = space.generic("ga").unwrap();
            let a = a.substitute(&common::binding(params, &mut rng)).unwrap();
            let n = model.base().algebra.factors.len();
            let (u, v) = (common::random_phases(n, &mut rng), common::random_phases(n, &mut rng));
            let au = gauge_transform(&model, &d, &a, &u).unwrap();
            let auv = gauge_transform(&model, &d, &au, &v).unwrap();
            prop_assert_eq!(&auv, &gauge_transform(&model, &d, &a, &v.mul(&u)).unwrap(), "{}", name);
            prop_assert!(space.contains(&(&au - &a), &[]).unwrap(), "{}", name);
        }
    }
}

#[test]
fn families_are_consistent() {
    for case in cases() {
        let f = &case.family;
        let name = case.model.name();
        assert_eq!(real_span_basis(&f.directions).unwrap().len(), f.len(), "{name}");
        let space = one_form_space(&case.model, &f.base).unwrap();
        assert_eq!(real_span_basis(&space.basis).unwrap().len(), space.dim(), "{name}");
        assert!(space.contains(&f.one_form(), &f.params).unwrap(), "{name}");
        let d = fluctuate(&case.model, &f.base, &f.one_form()).unwrap();
        assert_eq!(d, f.operator(), "{name}");
        assert!(is_selfadjoint(case, &f.fluctuation()), "{name}");
    }
}

#[test]
fn transparent_parts_have_no_fluctuations() {
    for name in ["manifold", "manifold-twist", "doubled-manifold", "ed", "sm-finite", "bprime", "btilde"] {
        let model = build(name).unwrap();
        let mut parts = model.base().part_names();
        parts.push("all".into());
        for part in parts {
            let m = restrict(&model, &part).unwrap();
            let d = m.base().dirac.clone();
            if !check_transparency(&m, &d).unwrap() {
                continue;
            }
            assert!(one_form_space(&m, &d).unwrap().basis.is_empty(), "{name}/{part}");
            assert!(selfadjoint_family(&m, &d, Adjointness::Standard).unwrap().is_empty(), "{name}/{part}");
            if m.twisted().is_some() {
                assert!(selfadjoint_family(&m, &d, Adjointness::Rho).unwrap().is_empty(), "{name}/{part}");
            }
        }
    }
}
