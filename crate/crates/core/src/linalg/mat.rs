use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::LinalgError;
use crate::scalars::{GaussRat, Scalar, ScalarError, Symbol};

/// Dense matrix over [`Scalar`]. Zero entries are empty polynomials, so the
/// zero-skipping product stays cheap on the sparse operators in scope.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Small integer/Gaussian matrices, entries given as `(re, im)`.
    pub fn from_ints(rows: &[&[(i64, i64)]]) -> Mat {
        Mat::from_rows(
            rows.iter().map(|r| r.iter().map(|&(a, b)| Scalar::constant(GaussRat::from_parts((a, 1), (b, 1)))).collect()).collect(),
        )
    }

    pub fn diag(entries: &[Scalar]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let c = self.cols;
        self.data.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(move |(k, s)| (k / c, k % c, s))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Scalar::is_constant)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Mat {
        self.map(Scalar::conj)
    }

    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        if s.is_zero() {
            return Mat::zeros(self.rows, self.cols);
        }
        self.map(|e| if e.is_zero() { Scalar::zero() } else { e * s })
    }

    pub fn scale_c(&self, c: &GaussRat) -> Mat {
        self.map(|e| e.scale(c))
    }

    pub fn try_add(&self, o: &Mat) -> Result<Mat, LinalgError> {
        self.check_same(o)?;
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, o: &Mat) -> Result<Mat, LinalgError> {
        self.check_same(o)?;
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() })
    }

    fn check_same(&self, o: &Mat) -> Result<(), LinalgError> {
        if self.shape() != o.shape() {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: o.shape() });
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: o.shape() });
        }
        let mut out = Mat::zeros(self.rows, o.cols);
        let orow: Vec<Vec<usize>> = (0..o.rows).map(|k| (0..o.cols).filter(|&j| !o.get(k, j).is_zero()).collect()).collect();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &orow[k] {
                    out.data[i * o.cols + j].add_mul(a, o.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Mat) -> Mat {
        &(self * o) - &(o * self)
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                out.set(i * o.rows + k, j * o.cols + l, a * b);
            }
        }
        out
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(Mat::rows).sum();
        let c: usize = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut oi, mut oj) = (0, 0);
        for b in blocks {
            out.set_block(oi, oj, b);
            oi += b.rows;
            oj += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, oi: usize, oj: usize, b: &Mat) {
        for (i, j, v) in b.entries() {
            self.set(oi + i, oj + j, v.clone());
        }
    }

    pub fn block(&self, oi: usize, oj: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |i, j| self.get(oi + i, oj + j).clone())
    }

    /// Rows and columns selected by index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Entrywise `∂_μ`.
    pub fn partial(&self, mu: usize) -> Mat {
        self.map(|e| e.partial(mu))
    }

    pub fn substitute(&self, b: &HashMap<Symbol, Scalar>) -> Result<Mat, ScalarError> {
        let data = self.data.iter().map(|e| e.substitute(b)).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn substitute_unchecked(&self, b: &HashMap<Symbol, Scalar>) -> Mat {
        self.map(|e| e.substitute_unchecked(b))
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.data.iter().flat_map(|e| e.symbols()).collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square() && (&self.adjoint() * self) == Mat::identity(self.rows)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.rows)
    }

    /// Inverse of a constant square matrix (Gauss–Jordan over ℚ(i)).
    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.shape()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<GaussRat>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(2 * n);
            for j in 0..n {
                row.push(self.get(i, j).as_constant().ok_or(LinalgError::NotConstant)?);
            }
            for j in 0..n {
                row.push(if i == j { GaussRat::one() } else { GaussRat::zero() });
            }
            a.push(row);
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(LinalgError::Singular)?;
            a.swap(c, p);
            let inv = a[c][c].inv().expect("nonzero pivot");
            for v in a[c].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..2 * n {
                        let d = &f * &a[c][k];
                        a[r][k] -= &d;
                    }
                }
            }
        }
        Ok(Mat::from_fn(n, n, |i, j| Scalar::constant(a[i][n + j].clone())))
    }

    /// Dimension of the kernel of a constant matrix.
    pub fn nullity(&self) -> Result<usize, LinalgError> {
        Ok(self.cols - super::rank_constant(self)?)
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        self.try_add(o).expect("matrix shape mismatch")
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        self.try_sub(o).expect("matrix shape mismatch")
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        self.try_mul(o).expect("matrix shape mismatch")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|e| -e)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// JSON array of rows of canonical scalar strings.
impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl Default for Mat {
    fn default() -> Self {
        Mat::zeros(0, 0)
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(self, o: Mat) -> Mat {
        &self + &o
    }
}

impl Sub for Mat {
    type Output = Mat;
    fn sub(self, o: Mat) -> Mat {
        &self - &o
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, o: Mat) -> Mat {
        &self * &o
    }
}
