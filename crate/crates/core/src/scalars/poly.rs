use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::{GaussRat, ScalarError, Symbol};

/// Sorted product of symbol powers. Unimodular pairs `u^a ū^b` are kept reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_powers(mut powers: Vec<(Symbol, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort();
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(powers.len());
        for (s, e) in powers {
            match out.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => out.push((s, e)),
            }
        }
        let mut m = Monomial(out);
        m.reduce_unimodular();
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.iter().find(|(t, _)| *t == s).map_or(0, |(_, e)| *e)
    }

    fn reduce_unimodular(&mut self) {
        if !self.0.iter().any(|(s, _)| s.is_unimodular()) {
            return;
        }
        let mut i = 0;
        while i + 1 < self.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = self.0[i + 1];
            if a.is_unimodular() && b == a.conj() {
                let m = ea.min(eb);
                self.0[i].1 -= m;
                self.0[i + 1].1 -= m;
            }
            i += 1;
        }
        self.0.retain(|(_, e)| *e > 0);
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.0.is_empty() {
            return other.clone();
        }
        if other.0.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            if a == b {
                out.push((a, ea + eb));
                i += 1;
                j += 1;
            } else if a < b {
                out.push((a, ea));
                i += 1;
            } else {
                out.push((b, eb));
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        let mut m = Monomial(out);
        m.reduce_unimodular();
        m
    }

    pub fn conj(&self) -> Monomial {
        Monomial::from_powers(self.0.iter().map(|(s, e)| (s.conj(), *e)).collect())
    }

    /// Splits into the part over symbols selected by `keep` and the rest.
    pub fn split(&self, keep: &dyn Fn(Symbol) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(s, _)| keep(*s));
        (Monomial(a), Monomial(b))
    }

    /// Exact quotient if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        for &(s, e) in &self.0 {
            let f = other.exponent(s);
            if f > e {
                return None;
            }
            if e > f {
                out.push((s, e - f));
            }
        }
        if other.0.iter().any(|(s, _)| self.exponent(*s) == 0) {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(s, e)| {
                    let f = other.exponent(s);
                    (f > 0).then_some((s, e.min(f)))
                })
                .collect(),
        )
    }

    /// Name-based key giving an ordering independent of registration order.
    pub fn display_key(&self) -> (u32, Vec<(String, u32)>) {
        let mut names: Vec<(String, u32)> = self.0.iter().map(|(s, e)| (s.name(), *e)).collect();
        names.sort();
        (self.degree(), names)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (_, names) = self.display_key();
        for (k, (n, e)) in names.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over ℚ(i) in commuting symbols, kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussRat::from_ratio(num, den))
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Scalar { terms }
    }

    pub fn term(c: GaussRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += a * b` without intermediate allocation of the product.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Scalar {
        let mut out = Scalar::zero();
        for (n, c) in &self.terms {
            out.add_term(n.mul(m), c.clone());
        }
        out
    }

    pub fn conj(&self) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            out.add_term(m.conj(), c.conj());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.powers().iter().map(|(s, _)| *s)).collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Derivation `∂_μ`; gradient symbols come from the symbol table.
    pub fn partial(&self, mu: usize) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let p = m.powers();
            for (k, &(s, e)) in p.iter().enumerate() {
                let ds = s.partial(mu);
                if ds.is_zero() {
                    continue;
                }
                let mut rest = p.to_vec();
                rest[k].1 -= 1;
                let rest = Monomial::from_powers(rest);
                let coef = c * &GaussRat::from_int(e as i64);
                out += &Scalar::term(coef, rest).mul_ref(&ds);
            }
        }
        out
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        out.add_mul(self, o);
        out
    }

    /// Homomorphic substitution. A binding for a complex symbol implies the
    /// conjugate binding for its partner; inconsistent bindings are rejected.
    pub fn substitute(&self, bindings: &HashMap<Symbol, Scalar>) -> Result<Scalar, ScalarError> {
        let full = complete_bindings(bindings)?;
        Ok(self.substitute_unchecked(&full))
    }

    /// Substitution with no reality checks; `bindings` is used as given.
    pub fn substitute_unchecked(&self, bindings: &HashMap<Symbol, Scalar>) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut acc = Scalar::constant(c.clone());
            let mut rest = Vec::new();
            for &(s, e) in m.powers() {
                match bindings.get(&s) {
                    Some(v) => acc = acc.mul_ref(&v.pow(e)),
                    None => rest.push((s, e)),
                }
            }
            out += &acc.mul_monomial(&Monomial::from_powers(rest));
        }
        out
    }

    /// Numeric evaluation when every symbol is bound to a constant.
    pub fn evaluate(&self, bindings: &HashMap<Symbol, GaussRat>) -> Option<GaussRat> {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(s, e) in m.powers() {
                let v = bindings.get(&s)?;
                for _ in 0..e {
                    t = &t * v;
                }
            }
            acc += &t;
        }
        Some(acc)
    }

    /// Groups terms by their monomial in the symbols selected by `keep`.
    pub fn split_by(&self, keep: &dyn Fn(Symbol) -> bool) -> BTreeMap<Monomial, Scalar> {
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (k, r) = m.split(keep);
            out.entry(k).or_default().add_term(r, c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Decomposes `self = Σ coeff[u]·u + rest` for the given unknowns.
    /// Fails if some term has total degree > 1 in the unknowns.
    pub fn linear_parts(&self, unknowns: &BTreeSet<Symbol>) -> Option<(BTreeMap<Symbol, Scalar>, Scalar)> {
        let mut coeffs: BTreeMap<Symbol, Scalar> = BTreeMap::new();
        let mut rest = Scalar::zero();
        for (m, c) in &self.terms {
            let (k, r) = m.split(&|s| unknowns.contains(&s));
            match k.powers() {
                [] => rest.add_term(r, c.clone()),
                [(s, 1)] => coeffs.entry(*s).or_default().add_term(r, c.clone()),
                _ => return None,
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Some((coeffs, rest))
    }

    /// Terms in display order (constant first, then by degree and names).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.display_key(), m, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    /// Common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Divides out the common monomial factor in nonvanishing symbols and
    /// makes the leading coefficient 1. Used for constraint equations, where
    /// only the zero set matters.
    pub fn normalized(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let (g, _) = self.monomial_content().split(&|s: Symbol| s.is_nonvanishing());
        let mut s = Scalar::zero();
        for (m, c) in &self.terms {
            s.add_term(m.div(&g).expect("content divides"), c.clone());
        }
        let lead = s.sorted_terms()[0].1.clone();
        s.scale(&lead.inv().expect("nonzero"))
    }

    /// Multiplies by the lcm of denominators and divides by the gcd of the
    /// integer coefficients, keeping the leading real part positive when real.
    pub fn primitive(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let lr = BigRational::from_integer(l);
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(&c.re * &lr).to_integer()).gcd(&(&c.im * &lr).to_integer());
        }
        let mut f = &lr / BigRational::from_integer(g);
        let lead = self.sorted_terms()[0].1.clone();
        if lead.re.is_negative() || (lead.re.is_zero() && lead.im.is_negative()) {
            f = -f;
        }
        self.scale(&GaussRat::new(f, BigRational::zero()))
    }
}

pub(crate) fn complete_bindings(bindings: &HashMap<Symbol, Scalar>) -> Result<HashMap<Symbol, Scalar>, ScalarError> {
    let mut full = bindings.clone();
    for (s, v) in bindings {
        let cv = v.conj();
        if s.is_real() {
            if cv != *v {
                return Err(ScalarError::RealityViolation(s.name()));
            }
            continue;
        }
        match bindings.get(&s.conj()) {
            Some(w) if *w != cv => return Err(ScalarError::RealityViolation(s.name())),
            Some(_) => {}
            None => {
                full.insert(s.conj(), cv);
            }
        }
    }
    Ok(full)
}

impl From<Symbol> for Scalar {
    fn from(s: Symbol) -> Self {
        Scalar::term(GaussRat::one(), Monomial::var(s))
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self += &o;
        self
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, o: Scalar) -> Scalar {
        self -= &o;
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

impl Mul<&Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Canonical text form, parseable by [`Scalar::parse`](super::parse).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg_real = c.im.is_zero() && c.re.is_negative();
            let neg_imag = c.re.is_zero() && c.im.is_negative();
            let (sign, body) = if neg_real || neg_imag { ("-", -c) } else { ("+", c.clone()) };
            if k > 0 || sign == "-" {
                write!(f, "{sign}")?;
            }
            if m.is_one() {
                write!(f, "{body}")?;
            } else if body.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
