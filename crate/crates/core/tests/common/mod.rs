#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ncg_core::clifford::Germ;
use ncg_core::linalg::Mat;
use ncg_core::scalars::{GaussRat, Scalar, Symbol};
use ncg_core::triples::{AlgebraElement, AlgebraSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut impl Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn gaussian(rng: &mut impl Rng) -> Scalar {
    let c = GaussRat::from_parts((rng.gen_range(-6..=6), rng.gen_range(1..=4)), (rng.gen_range(-6..=6), rng.gen_range(1..=4)));
    Scalar::constant(c)
}

/// Random values for the given symbols; conjugates follow automatically.
pub fn binding(symbols: impl IntoIterator<Item = Symbol>, rng: &mut impl Rng) -> HashMap<Symbol, Scalar> {
    let mut b = HashMap::new();
    for s in symbols {
        if s.is_barred() || b.contains_key(&s) {
            continue;
        }
        let v = if s.is_real() { rational(rng) } else { gaussian(rng) };
        b.insert(s, v);
    }
    b
}

pub fn germ_symbols(g: &Germ) -> BTreeSet<Symbol> {
    let mut out = g.value.symbols();
    for m in &g.grad {
        out.extend(m.symbols());
    }
    out
}

pub fn element_symbols(x: &AlgebraElement) -> BTreeSet<Symbol> {
    x.factors.iter().flat_map(germ_symbols).collect()
}

pub fn specialize(x: &AlgebraElement, b: &HashMap<Symbol, Scalar>) -> AlgebraElement {
    AlgebraElement { factors: x.factors.iter().map(|g| g.substitute(b).expect("consistent binding")).collect() }
}

/// Random element of the algebra with exact rational values and gradients.
pub fn random_element(alg: &AlgebraSpec, tag: &str, rng: &mut impl Rng) -> AlgebraElement {
    let g = alg.generic(tag);
    let b = binding(element_symbols(&g), rng);
    specialize(&g, &b)
}

/// `e^{iθ}` at a point: the unimodular rational `(a² − b² + 2abi)/(a² + b²)`
/// with gradient `i·t_μ·u`.
pub fn unimodular(rng: &mut impl Rng) -> (Scalar, [Scalar; 4]) {
    let (a, b): (i64, i64) = loop {
        let p = (rng.gen_range(-7..=7), rng.gen_range(-7..=7));
        if p != (0, 0) {
            break p;
        }
    };
    let n = a * a + b * b;
    let u = Scalar::constant(GaussRat::from_parts((a * a - b * b, n), (2 * a * b, n)));
    let t = std::array::from_fn(|_| rational(rng));
    (u, t)
}

pub fn phase_germ(u: &Scalar, t: &[Scalar; 4]) -> Germ {
    let one = |s: Scalar| Mat::from_rows(vec![vec![s]]);
    Germ::new(one(u.clone()), std::array::from_fn(|mu| one(Scalar::i() * &t[mu] * u)))
}

/// Random unitary of an algebra of `ℂ` factors, one phase per factor.
pub fn random_phases(factors: usize, rng: &mut impl Rng) -> AlgebraElement {
    AlgebraElement {
        factors: (0..factors)
            .map(|_| {
                let (u, t) = unimodular(rng);
                phase_germ(&u, &t)
            })
            .collect(),
    }
}
