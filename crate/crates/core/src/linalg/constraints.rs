use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalars::{GaussRat, Scalar, Symbol};

/// A set of polynomial equations `p = 0` on symbols.
///
/// Members are normalized (monomial content removed, leading coefficient 1),
/// so only the zero set is meaningful. A polynomial and its conjugate define
/// the same condition on conjugation-consistent bindings, so only one of each
/// such pair is kept. Removing monomial content assumes the symbols involved
/// are generically nonzero.
#[derive(Clone, Default)]
pub struct ConstraintSet {
    polys: Vec<Scalar>,
    /// Sort key of each member, parallel to `polys`.
    keys: Vec<(usize, String)>,
    seen: HashSet<Scalar>,
}

impl PartialEq for ConstraintSet {
    fn eq(&self, other: &Self) -> bool {
        self.polys == other.polys
    }
}

impl Eq for ConstraintSet {}

impl ConstraintSet {
    pub fn empty() -> Self {
        ConstraintSet::default()
    }

    pub fn from_polys<I: IntoIterator<Item = Scalar>>(polys: I) -> Self {
        let mut c = ConstraintSet::empty();
        for p in polys {
            c.push(p);
        }
        c
    }

    pub fn push(&mut self, p: Scalar) {
        if p.is_zero() {
            return;
        }
        let n = p.normalized();
        let nc = n.conj().normalized();
        if self.seen.contains(&n) || self.seen.contains(&nc) {
            return;
        }
        let key = |s: &Scalar| (s.num_terms(), s.to_string());
        let (kn, kc) = (key(&n), key(&nc));
        let (pick, k) = if nc != n && kc < kn { (nc, kc) } else { (n, kn) };
        let pos = self.keys.partition_point(|q| *q <= k);
        self.keys.insert(pos, k);
        self.seen.insert(pick.clone());
        self.polys.insert(pos, pick);
    }

    pub fn extend(&mut self, other: &ConstraintSet) {
        for p in &other.polys {
            self.push(p.clone());
        }
    }

    /// True when there are no conditions (the check passes unconditionally).
    pub fn is_satisfied(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[Scalar] {
        &self.polys
    }

    /// True if some member is a nonzero constant (no binding can satisfy the set).
    pub fn is_infeasible(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.polys.iter().flat_map(|p| p.symbols()).collect()
    }

    /// Whether a numeric binding lies in the zero set. `None` if some symbol is unbound.
    pub fn holds_at(&self, b: &HashMap<Symbol, GaussRat>) -> Option<bool> {
        for p in &self.polys {
            if !p.evaluate(b)?.is_zero() {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Substitutes and re-normalizes.
    pub fn substitute(&self, b: &HashMap<Symbol, Scalar>) -> ConstraintSet {
        ConstraintSet::from_polys(self.polys.iter().map(|p| p.substitute_unchecked(b)))
    }

    /// Row space of linear members and their conjugates, with unbarred
    /// symbols ordered first. `None` if some member is not linear.
    fn linear_rref(sets: &[&ConstraintSet], syms: &[Symbol]) -> Option<super::span::Rref> {
        let set: BTreeSet<Symbol> = syms.iter().copied().collect();
        let mut rref = super::span::Rref::new();
        for c in sets {
            for p in c.polys.iter().flat_map(|p| [p.clone(), p.conj()]) {
                let (coeffs, rest) = p.linear_parts(&set)?;
                let mut row = std::collections::BTreeMap::new();
                for (s, v) in coeffs {
                    row.insert(syms.iter().position(|t| *t == s)?, v.as_constant()?);
                }
                if !rest.is_zero() {
                    row.insert(syms.len(), rest.as_constant()?);
                }
                rref.insert(&row);
            }
        }
        Some(rref)
    }

    fn ordered_symbols(sets: &[&ConstraintSet]) -> Vec<Symbol> {
        let all: BTreeSet<Symbol> = sets.iter().flat_map(|c| c.symbols()).flat_map(|s| [s, s.conj()]).collect();
        let mut syms: Vec<Symbol> = all.into_iter().collect();
        syms.sort_by_key(|s| (s.is_barred(), s.name()));
        syms
    }

    /// Equality of the solution sets of two linear constraint systems,
    /// compared as row spaces (conjugate conditions included).
    pub fn same_linear_variety(&self, other: &ConstraintSet) -> bool {
        let syms = Self::ordered_symbols(&[self, other]);
        let rank = |sets: &[&ConstraintSet]| Self::linear_rref(sets, &syms).map(|r| r.rank());
        match (rank(&[self]), rank(&[other]), rank(&[self, other])) {
            (Some(a), Some(b), Some(c)) => a == c && b == c,
            _ => false,
        }
    }

    /// Canonical generators of a linear system: reduced rows over ℚ(i) with
    /// unbarred symbols as pivots, so that real and imaginary parts of one
    /// complex condition merge back into it. Nonlinear sets are returned as is.
    pub fn linear_reduced(&self) -> ConstraintSet {
        let syms = Self::ordered_symbols(&[self]);
        let Some(rref) = Self::linear_rref(&[self], &syms) else { return self.clone() };
        ConstraintSet::from_polys(rref.rows().iter().map(|row| {
            let mut p = Scalar::zero();
            for (&k, v) in row {
                let term = if k == syms.len() { Scalar::constant(v.clone()) } else { Scalar::from(syms[k]).scale(v) };
                p = &p + &term;
            }
            p
        }))
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.polys.is_empty() {
            return write!(f, "{{}}");
        }
        let items: Vec<String> = self.polys.iter().map(|p| format!("{p} = 0")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ConstraintSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let items: Vec<String> = self.polys.iter().map(|p| p.to_string()).collect();
        items.serialize(s)
    }
}
