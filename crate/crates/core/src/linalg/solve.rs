use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{ConstraintSet, LinalgError};
use crate::scalars::{GaussRat, Kind, Monomial, Scalar, Symbol};

/// Parametrized solution set `unknowns = offset + Σ params[k]·basis[k]`.
///
/// Real parameters are named `{prefix}{k}`, complex ones `{prefix}z{k}`.
///
/// Entries may involve symbols other than the unknowns; those are treated as
/// fixed generic parameters. `conditions` lists what they must satisfy for
/// the system to be consistent.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionSpace {
    pub unknowns: Vec<Symbol>,
    pub params: Vec<Symbol>,
    pub offset: Vec<Scalar>,
    pub basis: Vec<Vec<Scalar>>,
    pub conditions: ConstraintSet,
    /// Rank of the linear system in the (possibly real-split) coordinates.
    pub rank: usize,
    /// Whether complex unknowns were split into real and imaginary parts.
    pub real_split: bool,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.params.len()
    }

    /// Unknown ↦ general solution in terms of the parameters.
    pub fn values(&self) -> HashMap<Symbol, Scalar> {
        let mut out = HashMap::new();
        for (i, u) in self.unknowns.iter().enumerate() {
            let mut v = self.offset[i].clone();
            for (t, b) in self.params.iter().zip(&self.basis) {
                v.add_mul(&Scalar::from(*t), &b[i]);
            }
            out.insert(*u, v);
        }
        out
    }

    /// Like [`values`](Self::values) but also binds conjugate partners, so
    /// substitution into expressions involving `ū` is complete.
    pub fn bindings(&self) -> HashMap<Symbol, Scalar> {
        let mut out = self.values();
        let extra: Vec<(Symbol, Scalar)> =
            out.iter().filter(|(u, _)| !u.is_real() && !out.contains_key(&u.conj())).map(|(u, v)| (u.conj(), v.conj())).collect();
        out.extend(extra);
        out
    }

    /// Value of the solution at a particular parameter point.
    pub fn member(&self, params: &[Scalar]) -> HashMap<Symbol, Scalar> {
        let b: HashMap<Symbol, Scalar> = self.params.iter().copied().zip(params.iter().cloned()).collect();
        self.bindings().into_iter().map(|(u, v)| (u, v.substitute_unchecked(&b))).collect()
    }
}

fn split_names(u: Symbol) -> (String, String) {
    let n = u.name();
    (format!("\u{211c}{n}"), format!("\u{2111}{n}"))
}

/// Solves a system of equations `eq = 0`, linear in `unknowns`, exactly.
///
/// If some complex unknown appears together with its conjugate while the
/// conjugate is not itself an unknown, every complex unknown is split into
/// real coordinates and the parameters are real; otherwise conjugate partners
/// are independent coordinates and parameters are complex. Coefficients may
/// be polynomials in other symbols; elimination is then fraction-free and
/// pivots are assumed generically nonzero.
pub fn solve_linear_in_symbols(eqs: &[Scalar], unknowns: &[Symbol]) -> Result<SolutionSpace, LinalgError> {
    solve_linear_with_prefix(eqs, unknowns, "t")
}

pub fn solve_linear_with_prefix(eqs: &[Scalar], unknowns: &[Symbol], prefix: &str) -> Result<SolutionSpace, LinalgError> {
    let uset: BTreeSet<Symbol> = unknowns.iter().copied().collect();
    let all_syms: BTreeSet<Symbol> = eqs.iter().flat_map(|e| e.symbols()).collect();
    let real_split = unknowns.iter().any(|u| !u.is_real() && !uset.contains(&u.conj()) && all_syms.contains(&u.conj()));

    // Coordinates of the linear system.
    let mut coords: Vec<Symbol> = Vec::new();
    let mut subst: HashMap<Symbol, Scalar> = HashMap::new();
    // For each unknown, its expression in coordinates as (coord index, coefficient) list.
    let mut back: Vec<Vec<(usize, GaussRat)>> = Vec::new();
    if real_split {
        let mut done: HashMap<Symbol, (usize, usize)> = HashMap::new();
        for &u in unknowns {
            if u.is_real() {
                coords.push(u);
                back.push(vec![(coords.len() - 1, GaussRat::one())]);
                continue;
            }
            let base = if u.is_barred() { u.conj() } else { u };
            let (ri, ii) = *done.entry(base).or_insert_with(|| {
                let (rn, inn) = split_names(base);
                let re = Symbol::intern(&rn, Kind::Real).expect("split name clash");
                let im = Symbol::intern(&inn, Kind::Real).expect("split name clash");
                let re_s = Scalar::from(re);
                let im_s = Scalar::i() * Scalar::from(im);
                subst.insert(base, &re_s + &im_s);
                subst.insert(base.conj(), &re_s - &im_s);
                coords.push(re);
                coords.push(im);
                (coords.len() - 2, coords.len() - 1)
            });
            let sign = if u.is_barred() { -1 } else { 1 };
            back.push(vec![(ri, GaussRat::one()), (ii, GaussRat::from_parts((0, 1), (sign, 1)))]);
        }
    } else {
        for &u in unknowns {
            if !coords.contains(&u) {
                coords.push(u);
            }
            back.push(vec![(coords.iter().position(|c| *c == u).expect("coord"), GaussRat::one())]);
        }
    }
    let cset: BTreeSet<Symbol> = coords.iter().copied().collect();
    let n = coords.len();

    let mut system: Vec<Scalar> = Vec::new();
    for e in eqs {
        if real_split {
            let e = e.substitute_unchecked(&subst);
            let c = e.conj();
            system.push((&e + &c).scale(&GaussRat::from_ratio(1, 2)));
            system.push((&e - &c).scale(&GaussRat::from_parts((0, 1), (-1, 2))));
        } else {
            system.push(e.clone());
        }
    }

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut seen: HashSet<Vec<Scalar>> = HashSet::new();
    for e in &system {
        if e.is_zero() {
            continue;
        }
        let (coeffs, rest) = e.linear_parts(&cset).ok_or_else(|| LinalgError::Nonlinear(e.to_string()))?;
        let mut row = vec![Scalar::zero(); n + 1];
        for (s, c) in coeffs {
            row[coords.iter().position(|x| *x == s).expect("coord")] = c;
        }
        row[n] = -rest;
        normalize_row(&mut row, real_split);
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }

    // Gauss–Jordan, constant pivots preferred, fraction-free otherwise.
    let mut rank = 0;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..n {
        let cands: Vec<usize> = (rank..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
        let Some(&p) = cands.iter().find(|&&r| rows[r][col].is_constant()).or(cands.first()) else { continue };
        rows.swap(rank, p);
        if let Some(c) = rows[rank][col].as_constant() {
            let inv = c.inv().expect("nonzero pivot");
            for x in rows[rank].iter_mut() {
                *x = x.scale(&inv);
            }
        }
        let prow = rows[rank].clone();
        let pv = prow[col].clone();
        let unit = pv.is_one();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let e = row[col].clone();
            for k in 0..=n {
                if unit {
                    if !prow[k].is_zero() {
                        let d = &e * &prow[k];
                        row[k] -= &d;
                    }
                } else {
                    let mut v = &pv * &row[k];
                    if !prow[k].is_zero() {
                        v -= &(&e * &prow[k]);
                    }
                    row[k] = v;
                }
            }
            if !unit {
                normalize_row(row, real_split);
            }
        }
        pivots.push(col);
        rank += 1;
    }

    for r in 0..rank {
        if let Some(c) = rows[r][pivots[r]].as_constant() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero pivot");
                for x in rows[r].iter_mut() {
                    *x = x.scale(&inv);
                }
            }
        }
    }

    let mut conditions = ConstraintSet::empty();
    for row in &rows[rank..] {
        if !row[n].is_zero() {
            if row[n].is_constant() {
                return Err(LinalgError::Infeasible);
            }
            conditions.push(row[n].clone());
        }
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nonconst: Vec<usize> = (0..rank).filter(|&r| !rows[r][pivots[r]].is_constant()).collect();
    let product_except = |skip: Option<usize>| -> Scalar {
        let mut l = Scalar::one();
        for &r in &nonconst {
            if Some(r) != skip {
                l = l * &rows[r][pivots[r]];
            }
        }
        l
    };

    let mut coord_offset = vec![Scalar::zero(); n];
    for r in 0..rank {
        let rhs = &rows[r][n];
        if rhs.is_zero() {
            continue;
        }
        if nonconst.contains(&r) {
            return Err(LinalgError::NonConstantPivot(rows[r][pivots[r]].to_string()));
        }
        coord_offset[pivots[r]] = rhs.clone();
    }
    let mut coord_basis: Vec<Vec<Scalar>> = Vec::new();
    for &f in &free {
        let mut v = vec![Scalar::zero(); n];
        v[f] = product_except(None);
        for r in 0..rank {
            let a = &rows[r][f];
            if a.is_zero() {
                continue;
            }
            let others = if nonconst.contains(&r) { product_except(Some(r)) } else { product_except(None) };
            v[pivots[r]] = -(a * &others);
        }
        normalize_vec(&mut v, real_split);
        coord_basis.push(v);
    }

    let kind = if real_split { Kind::Real } else { Kind::Complex };
    let params: Vec<Symbol> = (0..free.len())
        .map(|k| {
            let name = if real_split { format!("{prefix}{k}") } else { format!("{prefix}z{k}") };
            Symbol::intern(&name, kind).expect("parameter name clash")
        })
        .collect();
    let lift = |v: &[Scalar]| -> Vec<Scalar> {
        back.iter()
            .map(|terms| {
                let mut s = Scalar::zero();
                for (c, g) in terms {
                    s += &v[*c].scale(g);
                }
                s
            })
            .collect()
    };
    Ok(SolutionSpace {
        unknowns: unknowns.to_vec(),
        offset: lift(&coord_offset),
        basis: coord_basis.iter().map(|v| lift(v)).collect(),
        params,
        conditions,
        rank,
        real_split,
    })
}

fn normalize_row(row: &mut [Scalar], real: bool) {
    normalize_vec(row, real);
}

/// Removes a common monomial factor (complex mode only) and numeric content.
fn normalize_vec(v: &mut [Scalar], real: bool) {
    let nz: Vec<&Scalar> = v.iter().filter(|s| !s.is_zero()).collect();
    if nz.is_empty() {
        return;
    }
    if !real {
        let mut g: Option<Monomial> = None;
        for s in &nz {
            let c = s.monomial_content();
            g = Some(match g {
                None => c,
                Some(h) => h.gcd(&c),
            });
        }
        let g = g.expect("nonempty");
        if !g.is_one() {
            for s in v.iter_mut() {
                if !s.is_zero() {
                    let mut out = Scalar::zero();
                    for (m, c) in s.terms() {
                        out += &Scalar::term(c.clone(), m.div(&g).expect("content divides"));
                    }
                    *s = out;
                }
            }
        }
    }
    // Numeric content: scale so the first nonzero entry is primitive.
    let first = v.iter().find(|s| !s.is_zero()).expect("nonzero").clone();
    let prim = first.primitive();
    let (m0, c0) = first.sorted_terms()[0];
    let target = prim.terms().find(|(m, _)| *m == m0).map(|(_, c)| c.clone()).expect("same support");
    let f = &target * &c0.inv().expect("nonzero");
    if !f.is_one() && (!real || f.is_real()) {
        for s in v.iter_mut() {
            *s = s.scale(&f);
        }
    }
}
