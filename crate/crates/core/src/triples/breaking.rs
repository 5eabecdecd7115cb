use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{AlgebraElement, AlgebraSpec, Factor, RealSpectralTriple, TripleError};
use crate::linalg::{solve_linear_in_symbols, ConstraintSet, Mat};

/// A simple summand left over after imposing a commutation condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrokenFactor {
    /// Name of the factor it comes from.
    pub parent: String,
    pub label: String,
    pub factor: Factor,
    /// Matrix (or quaternion) indices of the parent factor it acts on.
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BreakReport {
    pub constraints: ConstraintSet,
    pub factors: Vec<BrokenFactor>,
}

impl BreakReport {
    /// Multiset of `(factor, label)` pairs, sorted, for structural comparison.
    pub fn structure(&self) -> Vec<(Factor, String)> {
        let mut v: Vec<(Factor, String)> = self.factors.iter().map(|f| (f.factor, f.label.clone())).collect();
        v.sort_by(|a, b| (a.0.label(), &a.1).cmp(&(b.0.label(), &b.1)));
        v
    }
}

impl fmt::Display for BreakReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|b| if b.label.is_empty() { b.factor.label() } else { format!("{}_{}", b.factor.label(), b.label) })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Imposes `[op, π(a)] = 0` on a generic element and reads off the simple
/// summands of what remains, factor by factor, from the surviving entries.
///
/// `label(factor, index)` names an index of a factor (e.g. its chirality);
/// a summand gets the label shared by all its indices.
pub fn break_by_commutant(t: &RealSpectralTriple, op: &Mat, label: &dyn Fn(usize, usize) -> String) -> Result<BreakReport, TripleError> {
    let a = t.algebra.generic("a").values_only();
    let pa = t.represent(&a).value;
    let comm = op.commutator(&pa);
    let eqs: Vec<_> = comm.entries().map(|(_, _, s)| s.clone()).collect();
    let constraints = ConstraintSet::from_polys(eqs.iter().cloned());
    let unknowns = t.algebra.generic_symbols("a");
    let space = solve_linear_in_symbols(&eqs, &unknowns)?;
    let sol = space.values();
    let mut factors = Vec::new();
    for (k, (name, f)) in t.algebra.factors.iter().enumerate() {
        let v = a.factors[k].value.substitute_unchecked(&sol);
        let (n, step) = match f {
            Factor::C | Factor::MC(_) => (f.size(), 1),
            Factor::H | Factor::MH(_) => (f.size() / 2, 2),
        };
        let alive = |i: usize, j: usize| -> bool { (0..step).any(|p| (0..step).any(|q| !v.get(step * i + p, step * j + q).is_zero())) };
        let mut parent: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j && alive(i, j) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_pos: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            if !alive(i, i) {
                continue;
            }
            let r = find(&mut parent, i);
            let pos = *root_pos.entry(r).or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[pos].push(i);
        }
        for c in comps {
            let m = c.len();
            let factor = match (step, m) {
                (1, 1) => Factor::C,
                (1, _) => Factor::MC(m),
                (_, 1) => Factor::H,
                _ => Factor::MH(m),
            };
            let labels: Vec<String> = c.iter().map(|&i| label(k, i)).collect();
            let lab = if labels.iter().all(|l| *l == labels[0]) { labels[0].clone() } else { labels.join("+") };
            factors.push(BrokenFactor { parent: name.clone(), label: lab, factor, indices: c });
        }
    }
    Ok(BreakReport { constraints, factors })
}

/// Replaces factor `j` by factor `i` for each pair, identifying the two.
pub fn identify_factors(x: &AlgebraElement, pairs: &[(usize, usize)]) -> AlgebraElement {
    let mut y = x.clone();
    for &(i, j) in pairs {
        y.factors[j] = x.factors[i].clone();
    }
    y
}

/// Minimal sets of factor identifications which, imposed on both arguments of
/// a bilinear check, make it pass. Candidates must pair factors of equal type.
pub fn symmetric_branches(
    alg: &AlgebraSpec,
    candidates: &[(usize, usize)],
    max_size: usize,
    check: &dyn Fn(&AlgebraElement, &AlgebraElement) -> Result<ConstraintSet, TripleError>,
) -> Result<Vec<Vec<(usize, usize)>>, TripleError> {
    for &(i, j) in candidates {
        if alg.factors[i].1 != alg.factors[j].1 {
            return Err(TripleError::DimensionMismatch(format!("cannot identify {} with {}", alg.factors[i].0, alg.factors[j].0)));
        }
    }
    let a = alg.generic("a");
    let b = alg.generic("b");
    let mut found: Vec<Vec<(usize, usize)>> = Vec::new();
    let n = candidates.len();
    let mut masks: Vec<u32> = (1..(1u32 << n)).filter(|m| m.count_ones() as usize <= max_size).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found_masks: Vec<u32> = Vec::new();
    for m in masks {
        if found_masks.iter().any(|f| f & m == *f) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..n).filter(|k| m & (1 << k) != 0).map(|k| candidates[k]).collect();
        if check(&identify_factors(&a, &pairs), &identify_factors(&b, &pairs))?.is_satisfied() {
            found_masks.push(m);
            found.push(pairs);
        }
    }
    Ok(found)
}
