use std::collections::{BTreeMap, HashMap};

use num::{BigRational, Zero};

use super::{LinalgError, Mat};
use crate::scalars::{GaussRat, Monomial, Scalar};

type SparseRow = BTreeMap<usize, GaussRat>;

/// Reduced row echelon form over ℚ(i) built incrementally.
#[derive(Default, Clone, Debug)]
pub struct Rref {
    rows: Vec<SparseRow>,
}

impl Rref {
    pub fn new() -> Self {
        Rref::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Pivot column of each row, in row order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| *r.keys().next().expect("nonzero row")).collect()
    }

    /// Reduces `v` against the current rows; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut v = v.clone();
        let pivots: BTreeMap<usize, usize> = self.pivots().into_iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (&p, &ri) in &pivots {
            let Some(c) = v.get(&p).cloned() else { continue };
            for (k, x) in &self.rows[ri] {
                let e = v.entry(*k).or_insert_with(GaussRat::zero);
                *e -= &(&c * x);
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &SparseRow) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero lead");
        let r: SparseRow = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                for (k, x) in &r {
                    let e = row.entry(*k).or_insert_with(GaussRat::zero);
                    *e -= &(&c * x);
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        let pos = self.rows.iter().position(|row| *row.keys().next().unwrap() > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, r);
        true
    }

    /// Basis of the kernel of the row space viewed as a linear map on `ncols` coordinates.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseRow> {
        let pivots = self.pivots();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v = SparseRow::new();
            v.insert(f, GaussRat::one());
            for (row, &p) in self.rows.iter().zip(&pivots) {
                if let Some(x) = row.get(&f) {
                    v.insert(p, -x);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Coordinate system for matrices of a fixed shape: (entry, monomial) pairs.
struct Coords {
    shape: (usize, usize),
    index: HashMap<(usize, Monomial), usize>,
    keys: Vec<(usize, Monomial)>,
}

impl Coords {
    fn build(mats: &[Mat]) -> Result<Coords, LinalgError> {
        let shape = mats.first().map_or((0, 0), Mat::shape);
        let mut all: Vec<(usize, Monomial)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for m in mats {
            if m.shape() != shape {
                return Err(LinalgError::ShapeMismatch { left: shape, right: m.shape() });
            }
            for (i, j, s) in m.entries() {
                for (mono, _) in s.terms() {
                    let key = (i * shape.1 + j, mono.clone());
                    if seen.insert(key.clone()) {
                        all.push(key);
                    }
                }
            }
        }
        let mut dk: HashMap<Monomial, (u32, Vec<(String, u32)>)> = HashMap::new();
        for (_, m) in &all {
            dk.entry(m.clone()).or_insert_with(|| m.display_key());
        }
        all.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| dk[&a.1].cmp(&dk[&b.1])));
        let index = all.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        Ok(Coords { shape, index, keys: all })
    }

    fn vector(&self, m: &Mat) -> Option<SparseRow> {
        let mut v = SparseRow::new();
        for (i, j, s) in m.entries() {
            for (mono, c) in s.terms() {
                let k = *self.index.get(&(i * self.shape.1 + j, mono.clone()))?;
                v.insert(k, c.clone());
            }
        }
        Some(v)
    }

    fn matrix(&self, v: &SparseRow) -> Mat {
        let mut m = Mat::zeros(self.shape.0, self.shape.1);
        for (k, c) in v {
            let (e, mono) = &self.keys[*k];
            *m.get_mut(e / self.shape.1, e % self.shape.1) += &Scalar::term(c.clone(), mono.clone());
        }
        m
    }
}

/// Echelonized basis of the ℚ(i)-span of `mats`, treating distinct symbol
/// monomials in each entry as independent coordinates.
pub fn span_basis(mats: &[Mat]) -> Result<Vec<Mat>, LinalgError> {
    let coords = Coords::build(mats)?;
    let mut rref = Rref::new();
    for m in mats {
        rref.insert(&coords.vector(m).expect("own coordinates"));
    }
    Ok(rref.rows().iter().map(|r| coords.matrix(r)).collect())
}

/// Coefficients of `target` in the ℚ(i)-span of `basis`, if it lies there.
pub fn express_in(target: &Mat, basis: &[Mat]) -> Result<Option<Vec<GaussRat>>, LinalgError> {
    let mut all = basis.to_vec();
    all.push(target.clone());
    let coords = Coords::build(&all)?;
    // Solve Σ x_k b_k = t by reducing the transposed system.
    let n = basis.len();
    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); coords.keys.len()];
    for (k, b) in basis.iter().enumerate() {
        for (c, x) in coords.vector(b).expect("own coordinates") {
            rows[c].insert(k, x);
        }
    }
    for (c, x) in coords.vector(target).expect("own coordinates") {
        rows[c].insert(n, -x);
    }
    let mut rref = Rref::new();
    for r in &rows {
        rref.insert(r);
    }
    if rref.pivots().contains(&n) {
        return Ok(None);
    }
    let mut x = vec![GaussRat::zero(); n];
    for (row, p) in rref.rows().iter().zip(rref.pivots()) {
        // x_p + Σ_free a x_free + a_n·1 = 0 with free variables set to zero
        x[p] = row.get(&n).map(|a| -a).unwrap_or_else(GaussRat::zero);
    }
    Ok(Some(x))
}

/// Echelonized basis of the real span of `mats`, splitting every coefficient
/// into real and imaginary coordinates.
pub fn real_span_basis(mats: &[Mat]) -> Result<Vec<Mat>, LinalgError> {
    let coords = Coords::build(mats)?;
    let mut rref = Rref::new();
    for m in mats {
        rref.insert(&realify(&coords.vector(m).expect("own coordinates")));
    }
    Ok(rref.rows().iter().map(|r| coords.matrix(&complexify(r))).collect())
}

/// Real coefficients of `target` in the real span of `basis`, if it lies there.
pub fn express_in_real(target: &Mat, basis: &[Mat]) -> Result<Option<Vec<BigRational>>, LinalgError> {
    let mut all = basis.to_vec();
    all.push(target.clone());
    let coords = Coords::build(&all)?;
    let n = basis.len();
    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); 2 * coords.keys.len()];
    for (k, b) in basis.iter().enumerate() {
        for (c, x) in realify(&coords.vector(b).expect("own coordinates")) {
            rows[c].insert(k, x);
        }
    }
    for (c, x) in realify(&coords.vector(target).expect("own coordinates")) {
        rows[c].insert(n, -x);
    }
    let mut rref = Rref::new();
    for r in &rows {
        rref.insert(r);
    }
    if rref.pivots().contains(&n) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, p) in rref.rows().iter().zip(rref.pivots()) {
        x[p] = row.get(&n).map(|a| -a.re.clone()).unwrap_or_else(BigRational::zero);
    }
    Ok(Some(x))
}

/// Basis of the real relations `Σ c_k mats[k] = 0` with `c_k ∈ ℚ`.
pub fn real_relations(mats: &[Mat]) -> Result<Vec<Vec<BigRational>>, LinalgError> {
    if mats.is_empty() {
        return Ok(Vec::new());
    }
    let coords = Coords::build(mats)?;
    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); 2 * coords.keys.len()];
    for (k, m) in mats.iter().enumerate() {
        for (c, x) in realify(&coords.vector(m).expect("own coordinates")) {
            rows[c].insert(k, x);
        }
    }
    let mut rref = Rref::new();
    for r in rows.iter().filter(|r| !r.is_empty()) {
        rref.insert(r);
    }
    Ok(rref
        .nullspace(mats.len())
        .into_iter()
        .map(|v| {
            let mut out = vec![BigRational::zero(); mats.len()];
            for (k, x) in v {
                out[k] = x.re;
            }
            out
        })
        .collect())
}

fn realify(v: &SparseRow) -> SparseRow {
    let mut out = SparseRow::new();
    for (k, c) in v {
        if !c.re.is_zero() {
            out.insert(2 * k, GaussRat::new(c.re.clone(), BigRational::zero()));
        }
        if !c.im.is_zero() {
            out.insert(2 * k + 1, GaussRat::new(c.im.clone(), BigRational::zero()));
        }
    }
    out
}

fn complexify(v: &SparseRow) -> SparseRow {
    let mut out: SparseRow = SparseRow::new();
    for (k, c) in v {
        let e = out.entry(k / 2).or_insert_with(GaussRat::zero);
        if k % 2 == 0 {
            *e += c;
        } else {
            *e += &c.mul_i();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rank of a matrix with constant entries.
pub fn rank_constant(m: &Mat) -> Result<usize, LinalgError> {
    let mut rref = Rref::new();
    for i in 0..m.rows() {
        let mut row = SparseRow::new();
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !e.is_zero() {
                row.insert(j, e.as_constant().ok_or(LinalgError::NotConstant)?);
            }
        }
        rref.insert(&row);
    }
    Ok(rref.rank())
}

/// Kernel basis of a constant matrix, as column vectors.
pub fn nullspace_constant(m: &Mat) -> Result<Vec<Mat>, LinalgError> {
    let mut rref = Rref::new();
    for i in 0..m.rows() {
        let mut row = SparseRow::new();
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !e.is_zero() {
                row.insert(j, e.as_constant().ok_or(LinalgError::NotConstant)?);
            }
        }
        rref.insert(&row);
    }
    Ok(rref
        .nullspace(m.cols())
        .into_iter()
        .map(|v| {
            let mut c = Mat::zeros(m.cols(), 1);
            for (k, x) in v {
                c.set(k, 0, Scalar::constant(x));
            }
            c
        })
        .collect())
}

/// Basis of `{X : XM = MX for all M}` for constant square matrices of size `n`.
pub fn commutant(mats: &[Mat], n: usize) -> Result<Vec<Mat>, LinalgError> {
    let mut rref = Rref::new();
    for m in mats {
        if m.shape() != (n, n) {
            return Err(LinalgError::ShapeMismatch { left: (n, n), right: m.shape() });
        }
        let mut cm: Vec<Vec<(usize, GaussRat)>> = vec![Vec::new(); n];
        let mut rm: Vec<Vec<(usize, GaussRat)>> = vec![Vec::new(); n];
        for (i, j, s) in m.entries() {
            let c = s.as_constant().ok_or(LinalgError::NotConstant)?;
            cm[j].push((i, c.clone()));
            rm[i].push((j, c));
        }
        // (XM − MX)_{ij} = Σ_k X_ik M_kj − Σ_k M_ik X_kj, with X_ab at coordinate a·n+b.
        for i in 0..n {
            for j in 0..n {
                let mut row = SparseRow::new();
                for (k, c) in &cm[j] {
                    *row.entry(i * n + k).or_insert_with(GaussRat::zero) += c;
                }
                for (k, c) in &rm[i] {
                    *row.entry(k * n + j).or_insert_with(GaussRat::zero) -= c;
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    rref.insert(&row);
                }
            }
        }
    }
    Ok(rref
        .nullspace(n * n)
        .into_iter()
        .map(|v| {
            let mut x = Mat::zeros(n, n);
            for (k, c) in v {
                x.set(k / n, k % n, Scalar::constant(c));
            }
            x
        })
        .collect())
}
