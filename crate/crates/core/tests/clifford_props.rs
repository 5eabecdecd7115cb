use ncg_core::clifford::{charge_conjugation, germ_commutator, is_bounded, solve_intertwiner_constraint, GammaBasis, Germ, OperatorExpr};
use ncg_core::linalg::Mat;
use ncg_core::scalars::{GaussRat, Kind, Scalar, Symbol};
use proptest::prelude::*;

fn field(name: &str) -> Scalar {
    Scalar::from(Symbol::field(name, Kind::Complex).unwrap())
}

fn block2(f: &Scalar, g: &Scalar) -> Mat {
    Mat::diag(&[f.clone(), f.clone(), g.clone(), g.clone()])
}

#[test]
fn clifford_relations() {
    let g = GammaBasis::new();
    for mu in 0..4 {
        assert!(g.gamma[mu].is_hermitian());
        for nu in 0..4 {
            let ac = &(&g.gamma[mu] * &g.gamma[nu]) + &(&g.gamma[nu] * &g.gamma[mu]);
            let expect = if mu == nu { Mat::identity(4).scale(&Scalar::from(2)) } else { Mat::zeros(4, 4) };
            assert_eq!(ac, expect);
        }
        let ac5 = &(&g.gamma5 * &g.gamma[mu]) + &(&g.gamma[mu] * &g.gamma5);
        assert!(ac5.is_zero());
    }
    assert!((&g.gamma5 * &g.gamma5).is_identity());
    assert_eq!(g.gamma5, Mat::diag(&[(-1).into(), (-1).into(), 1.into(), 1.into()]));
}

#[test]
fn dirac_free_shape_and_adjoint() {
    let d = OperatorExpr::dirac_free();
    let g = GammaBasis::new();
    assert_eq!(d.order1[1], g.gamma[1].scale(&-Scalar::i()));
    assert!(d.order0.is_zero());
    assert_eq!(d.adjoint(), d);
}

#[test]
fn charge_conjugation_signs() {
    let j = charge_conjugation();
    assert!(j.is_unitary());
    // J² = −I for this chiral-basis choice
    assert_eq!(j.square(), Mat::identity(4).scale(&Scalar::from(-1)));
    let d = OperatorExpr::dirac_free();
    assert_eq!(d.conjugate_by(&j), d);
    let g = GammaBasis::new();
    assert_eq!(j.conjugate_unitary(&g.gamma5), g.gamma5);
}

#[test]
fn germ_commutator_examples() {
    let d = OperatorExpr::dirac_free();
    let f = field("gf");
    let g = field("gg");
    let scalar = Germ::from_value(Mat::identity(4).scale(&f));
    let c = germ_commutator(&d, &scalar, None).unwrap();
    assert!(is_bounded(&c).0);
    let gm = GammaBasis::new();
    let mut expect = Mat::zeros(4, 4);
    for mu in 0..4 {
        expect = &expect + &gm.gamma[mu].scale(&(-Scalar::i() * f.partial(mu)));
    }
    assert_eq!(c.order0, expect);

    let fg = Germ::from_value(block2(&f, &g));
    let c = germ_commutator(&d, &fg, None).unwrap();
    let (bounded, cons) = is_bounded(&c);
    assert!(!bounded);
    assert_eq!(cons.len(), 1);
    let flipped = Germ::from_value(block2(&g, &f));
    let c = germ_commutator(&d, &fg, Some(&flipped)).unwrap();
    assert!(is_bounded(&c).0);
}

#[test]
fn intertwiner_family() {
    let sol = solve_intertwiner_constraint().unwrap();
    assert_eq!(sol.equations, 64);
    assert_eq!(sol.space.unknowns.len(), 32);
    assert_eq!(sol.space.rank, 30);
    assert_eq!(sol.space.dim(), 2);
    let l = Scalar::from(sol.space.params[0]);
    let lp = Scalar::from(sol.space.params[1]);
    // A = diag(λI₂, λ′I₂), B = diag(λ′I₂, λI₂) up to naming of the two parameters
    let (a_expect, b_expect) = (block2(&l, &lp), block2(&lp, &l));
    let (a_swap, b_swap) = (block2(&lp, &l), block2(&l, &lp));
    assert!((sol.a == a_expect && sol.b == b_expect) || (sol.a == a_swap && sol.b == b_swap));
    let one = sol.space.member(&[Scalar::one(), Scalar::one()]);
    let a = Mat::from_fn(4, 4, |i, j| one[&Symbol::lookup(&format!("Aiw{i}{j}")).unwrap()].clone());
    let b = Mat::from_fn(4, 4, |i, j| one[&Symbol::lookup(&format!("Biw{i}{j}")).unwrap()].clone());
    assert!(a.is_identity() && b.is_identity());
}

fn small_germ(n: usize, tag: &str) -> Germ {
    Germ::from_value(Mat::from_fn(n, n, |i, j| field(&format!("{tag}{i}{j}"))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn twisted_leibniz(seed in 0u8..4, k in -2i64..=2) {
        let d = OperatorExpr::dirac_free();
        let a = small_germ(4, "la").map(|m| m.scale(&Scalar::from(k)));
        let b = small_germ(4, &format!("lb{seed}"));
        let flip = |x: &Germ| -> Germ {
            let p = Mat::from_fn(4, 4, |i, j| if (i + 2) % 4 == j { Scalar::one() } else { Scalar::zero() });
            x.conjugate_mat(&p)
        };
        let ab = a.mul(&b);
        let lhs = germ_commutator(&d, &ab, Some(&flip(&ab))).unwrap();
        let r1 = germ_commutator(&d, &a, Some(&flip(&a))).unwrap().mul_germ(&b).unwrap();
        let r2 = OperatorExpr::germ_mul(&flip(&a), &germ_commutator(&d, &b, Some(&flip(&b))).unwrap()).unwrap();
        prop_assert_eq!(lhs, r1.add(&r2));
    }

    #[test]
    fn bounded_iff_scalar(re in -3i64..=3, im in -3i64..=3, off in 0i64..=1) {
        let d = OperatorExpr::dirac_free();
        let c = Scalar::constant(GaussRat::from_parts((re, 1), (im, 1)));
        let f = field("bf");
        let mut v = Mat::identity(4).scale(&f);
        v.set(0, 1, c.scale(&GaussRat::from_int(off)));
        let comm = germ_commutator(&d, &Germ::from_value(v.clone()), None).unwrap();
        let commutes = GammaBasis::new().gamma.iter().all(|g| g.commutator(&v).is_zero());
        prop_assert_eq!(is_bounded(&comm).0, commutes);
    }
}
