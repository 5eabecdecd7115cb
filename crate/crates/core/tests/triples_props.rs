use std::collections::BTreeSet;

use ncg_core::clifford::OperatorExpr;
use ncg_core::linalg::Mat;
use ncg_core::models::{build, CATALOG};
use ncg_core::triples::{
    check_first_order, check_order_zero, manifold_triple, unitary_group_dim, validate_triple, AlgebraSpec, Factor, IndexScheme,
    TripleConfig,
};

#[test]
fn unitary_dims() {
    assert_eq!(unitary_group_dim(&AlgebraSpec::new(vec![("c", Factor::C)], false)).unwrap(), 1);
    let af = AlgebraSpec::new(vec![("λ", Factor::C), ("q", Factor::H), ("m", Factor::MC(3))], false);
    assert_eq!(unitary_group_dim(&af).unwrap(), 13);
    assert_eq!(unitary_group_dim(&AlgebraSpec::new(vec![("Q", Factor::MH(2))], false)).unwrap(), 10);
    assert!(unitary_group_dim(&AlgebraSpec::new(vec![("f", Factor::C)], true)).is_err());
}

#[test]
fn index_scheme_bijection() {
    let s = IndexScheme::new(&[("C", &["0", "1"]), ("I", &["0", "1", "2", "3"]), ("α", &["1̇", "2̇", "1", "2"])]);
    assert_eq!(s.dim(), 32);
    for k in 0..32 {
        assert_eq!(s.flatten(&s.unflatten(k)), k);
    }
    assert_eq!(s.label(5), "C=0,I=1,α=2̇");
}

#[test]
fn manifold_triple_is_valid() {
    let t = manifold_triple();
    let r = validate_triple(&t).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    assert_eq!(r.ko_dimension, Some(4));
    assert!(check_order_zero(&t).is_satisfied());
    assert!(check_first_order(&t).unwrap().is_satisfied());
}

#[test]
fn identity_grading_fails_anticommutation() {
    let mut t = manifold_triple();
    t.grading = Some(Mat::identity(4));
    let r = validate_triple(&t).unwrap();
    assert!(!r.check("grading.anticommutes_dirac").unwrap().passed());
    let t0 = t.with_parts(vec![("free".into(), OperatorExpr::zero(4))]);
    assert!(validate_triple(&t0).unwrap().check("grading.anticommutes_dirac").unwrap().passed());
}

const TWO_POINT: &str = r#"{
  "name": "two-point",
  "symbols": [{"name": "cfgr", "kind": "real"}],
  "factors": [{"name": "x", "kind": "C"}, {"name": "y", "kind": "C"}],
  "scheme": {"slots": [{"name": "p", "labels": ["x", "y"]}]},
  "placements": [{"factor": 0, "indices": [0]}, {"factor": 1, "indices": [1]}],
  "parts": [{"name": "mass", "entries": [[0, 1, "cfgr"], [1, 0, "cfgr"]]}],
  "real_structure": {"entries": [[0, 0, "1"], [1, 1, "1"]]},
  "grading": ["1", "-1"]
}"#;

#[test]
fn config_round_trip() {
    let cfg = TripleConfig::from_json(TWO_POINT).unwrap();
    let t = cfg.build().unwrap();
    let r = validate_triple(&t).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    // commutative algebra with J = conj: order zero holds
    assert!(check_order_zero(&t).is_satisfied());
    let echo = cfg.canonical_json().unwrap();
    let again = TripleConfig::from_json(&echo).unwrap();
    assert_eq!(again.canonical_json().unwrap(), echo);
}

fn epsilon_blocks(n: usize) -> Mat {
    let e = Mat::from_ints(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]);
    Mat::block_diag(&vec![e; n])
}

#[test]
fn quaternionic_generics_commute_with_the_quaternion_structure() {
    for (f, n) in [(Factor::H, 1), (Factor::MH(2), 2), (Factor::MH(3), 3)] {
        let x = f.generic(&format!("qg{n}"));
        let e = epsilon_blocks(n);
        assert_eq!(&(&e * &x.conj()) * &e.adjoint(), x, "{}", f.label());
    }
}

#[test]
fn generic_elements_use_fresh_symbols() {
    let alg = AlgebraSpec::new(vec![("c", Factor::C), ("q", Factor::H), ("m", Factor::MC(2)), ("Q", Factor::MH(2))], false);
    let a: BTreeSet<_> = alg.generic_symbols("fa").into_iter().collect();
    let b: BTreeSet<_> = alg.generic_symbols("fb").into_iter().collect();
    assert!(a.is_disjoint(&b));
    // complex factors contribute their entries, quaternion blocks α, β and their conjugates
    assert_eq!(a.len(), 1 + 4 + 4 + 16);
}

#[test]
fn representations_are_multiplicative_and_unital() {
    for d in CATALOG {
        let m = build(d.name).unwrap();
        let t = m.base();
        let (a, b) = (t.algebra.generic("ma"), t.algebra.generic("mb"));
        assert_eq!(t.represent(&a.mul(&b)), t.represent(&a).mul(&t.represent(&b)), "{}", d.name);
        assert_eq!(t.represent(&a.adjoint()), t.represent(&a).adjoint(), "{}", d.name);
        assert!(t.represent(&t.algebra.identity()).value.is_identity(), "{}", d.name);
    }
}
