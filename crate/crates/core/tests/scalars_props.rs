use std::collections::HashMap;

use ncg_core::scalars::{GaussRat, Kind, Scalar, ScalarError, Symbol};
use proptest::prelude::*;

fn pool() -> Vec<Symbol> {
    vec![
        Symbol::intern("px", Kind::Real).unwrap(),
        Symbol::intern("py", Kind::Real).unwrap(),
        Symbol::intern("pc", Kind::Complex).unwrap(),
        Symbol::intern("pc", Kind::Complex).unwrap().conj(),
        Symbol::intern("pd", Kind::Complex).unwrap(),
    ]
}

fn coeff() -> impl Strategy<Value = GaussRat> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(a, b, c, d)| GaussRat::from_parts((a, b), (c, d)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((coeff(), prop::collection::vec((0usize..5, 0u32..3), 0..3)), 0..4).prop_map(|terms| {
        let p = pool();
        let mut s = Scalar::zero();
        for (c, pw) in terms {
            let mut t = Scalar::constant(c);
            for (k, e) in pw {
                t = t * Scalar::from(p[k]).pow(e);
            }
            s += &t;
        }
        s
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conj_is_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn canonical_text_roundtrip(a in scalar()) {
        let text = a.to_string();
        let back = Scalar::parse(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn substitution_commutes_with_conj(a in scalar(), v in scalar()) {
        let p = pool();
        let mut b = HashMap::new();
        b.insert(p[2], v);
        let lhs = a.substitute(&b).unwrap().conj();
        let rhs = a.conj().substitute(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_is_leibniz(a in scalar(), b in scalar()) {
        let f = Symbol::field("pf", Kind::Complex).unwrap();
        let a = &a * &Scalar::from(f);
        let b = &b + &Scalar::from(f.conj());
        for mu in 0..4 {
            let lhs = (&a * &b).partial(mu);
            let rhs = &(&a.partial(mu) * &b) + &(&a * &b.partial(mu));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn symbol_creation() {
    let f0 = Symbol::new("sf0", Kind::Real).unwrap();
    assert_eq!(f0.conj(), f0);
    let c = Symbol::new("sc", Kind::Complex).unwrap();
    assert_eq!(c.conj().name(), "sc\u{304}");
    assert_eq!(c.conj().conj(), c);
    assert!(matches!(Symbol::new("sc", Kind::Complex), Err(ScalarError::DuplicateSymbol(_))));
    assert!(matches!(Symbol::intern("sc", Kind::Real), Err(ScalarError::KindMismatch(_))));
    let k = Symbol::new("skR", Kind::Real).unwrap();
    assert!(k.is_real());
}

#[test]
fn substitution_examples() {
    let x = Symbol::intern("sx", Kind::Real).unwrap();
    let y = Symbol::intern("sy", Kind::Real).unwrap();
    let c = Symbol::intern("scc", Kind::Complex).unwrap();
    let xy = Scalar::from(x) * Scalar::from(y);
    let r = xy.substitute(&HashMap::from([(x, Scalar::from(2))])).unwrap();
    assert_eq!(r, Scalar::from(2) * Scalar::from(y));
    let s = Scalar::from(c) + Scalar::from(c.conj());
    assert!(s.substitute(&HashMap::from([(c, Scalar::i())])).unwrap().is_zero());
    let bad = HashMap::from([(x, Scalar::i())]);
    assert!(matches!(xy.substitute(&bad), Err(ScalarError::RealityViolation(_))));
    assert!((Scalar::from(x) - Scalar::from(x)).is_zero());
    assert!(!(Scalar::from(c) - Scalar::from(c.conj())).is_zero());
}

#[test]
fn canonical_forms() {
    let f0 = Symbol::intern("f0", Kind::Real).unwrap();
    let d = Symbol::intern("db", Kind::Complex).unwrap();
    let s = Scalar::constant(GaussRat::from_parts((1, 2), (3, 1))) * Scalar::from(f0) * Scalar::from(d.conj());
    assert_eq!(s.to_string(), "(1/2+3i)*db\u{304}*f0");
    assert_eq!(Scalar::parse("(1/2+3i)*f0*db\u{304}").unwrap(), s);
    assert_eq!(Scalar::parse("1/2i").unwrap(), Scalar::constant(GaussRat::from_parts((0, 1), (1, 2))));
    assert_eq!(Scalar::parse("-i*f0 + 2 - f0^2").unwrap().to_string(), "2-i*f0-f0^2");
}

#[test]
fn phases_reduce_and_differentiate() {
    let theta = Symbol::field("stheta", Kind::Real).unwrap();
    let u = Symbol::phase("su", theta).unwrap();
    let p = Scalar::from(u) * Scalar::from(u.conj());
    assert!(p.is_one());
    // ∂(u ū) = 0 by Leibniz
    let lhs = &Scalar::from(u).partial(2) * &Scalar::from(u.conj()) + &Scalar::from(u) * &Scalar::from(u.conj()).partial(2);
    assert!(lhs.is_zero());
    assert_eq!(Scalar::from(u).partial(1).to_string(), "i*su*∂1stheta");
}
