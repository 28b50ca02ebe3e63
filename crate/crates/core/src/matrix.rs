//! Dense row-major matrices over a [`Scalar`], plus the real form of complex
//! matrices used for the spin(10) family.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{max_magnitude, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    /// `s * I_n`.
    pub fn scalar(n: usize, s: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_row_major",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Assembles a block matrix. Blocks in a block-row must share a height
    /// and blocks in a block-column must share a width.
    pub fn from_blocks(blocks: &[Vec<Matrix<T>>]) -> Self {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), widths.len(), "ragged block row");
            let mut c0 = 0;
            for (bj, block) in row.iter().enumerate() {
                assert_eq!((block.rows, block.cols), (heights[bi], widths[bj]), "block shape");
                out.set_block(r0, c0, block);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        out
    }

    /// `diag(blocks[0], blocks[1], ...)`.
    pub fn block_diagonal(blocks: &[&Matrix<T>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
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

    /// Row-major entries; doubles as the vectorization used for span tests.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<T>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> T {
        max_magnitude(&self.data)
    }

    pub fn frobenius_sq(&self) -> T {
        let mut acc = T::zero();
        for x in &self.data {
            acc.add_mul(x, x);
        }
        acc
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self[(i, i)].clone();
        }
        acc
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && (self + &self.transpose()).is_zero()
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let mut out = vec![T::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Matrix<T>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        // Most matrices here are signed-permutation blocks; skip zeros early.
        let other_nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..other.cols).filter(|&j| !other[(k, j)].is_zero()).collect())
            .collect();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for &j in &other_nz[k] {
                    let b = &other.data[k * other.cols + j];
                    out.data[i * other.cols + j].add_mul(a, b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix<T>, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &Matrix<T>) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Matrix<T>) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a.clone() - b.clone())
    }

    /// Serializes as `{"rows","cols","mode","entries"}`, entries row-major.
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "mode": T::MODE.name(),
            "entries": self.data.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| v.get(name).ok_or_else(|| Error::Json(format!("missing field {name:?}")));
        let rows = field("rows")?
            .as_u64()
            .ok_or_else(|| Error::Json("rows must be a count".into()))? as usize;
        let cols = field("cols")?
            .as_u64()
            .ok_or_else(|| Error::Json("cols must be a count".into()))? as usize;
        let mode = field("mode")?.as_str().unwrap_or_default();
        if mode != T::MODE.name() {
            return Err(Error::Json(format!(
                "mode {mode:?} does not match {:?}",
                T::MODE.name()
            )));
        }
        let entries = field("entries")?
            .as_array()
            .ok_or_else(|| Error::Json("entries must be an array".into()))?;
        let data = entries
            .iter()
            .map(|e| T::from_json(e).ok_or_else(|| Error::Json(format!("bad entry {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_row_major(rows, cols, data)
    }
}

/// `A · B`, failing on a shape mismatch.
pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.try_mul(b)
}

/// The commutator `AB − BA`.
pub fn bracket<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "bracket",
            left: a.shape(),
            right: b.shape(),
        });
    }
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the `try_` methods at API edges.
impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix product shape")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).expect("matrix sum shape")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix difference shape")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Convention for realizing `C^n` as `R^{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexStructure {
    /// Real parts in the first `n` coordinates, imaginary parts in the last
    /// `n`; the complex unit acts as `[[0, -I], [I, 0]]`.
    RealThenImaginary,
}

/// A complex `n × n` matrix stored as its real `2n × 2n` form.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    real: Matrix<T>,
    convention: ComplexStructure,
}

impl<T: Scalar> ComplexMatrix<T> {
    /// The real form of `re + i·im`.
    pub fn from_parts(re: &Matrix<T>, im: &Matrix<T>) -> Self {
        assert_eq!(re.shape(), im.shape());
        ComplexMatrix {
            real: Matrix::from_blocks(&[vec![re.clone(), -im], vec![im.clone(), re.clone()]]),
            convention: ComplexStructure::RealThenImaginary,
        }
    }

    /// Accepts a real matrix only if it commutes with the complex structure.
    pub fn from_real(real: Matrix<T>) -> Result<Self> {
        if !real.is_square() || !real.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                op: "complex form",
                left: real.shape(),
                right: (real.rows(), real.rows()),
            });
        }
        let j = complex_structure(real.rows() / 2);
        if !bracket(&real, &j)?.is_zero() {
            return Err(Error::Constraint("matrix is not complex-linear".into()));
        }
        Ok(ComplexMatrix {
            real,
            convention: ComplexStructure::RealThenImaginary,
        })
    }

    pub fn complex_dim(&self) -> usize {
        self.real.rows() / 2
    }

    pub fn convention(&self) -> ComplexStructure {
        self.convention
    }

    pub fn real_form(&self) -> &Matrix<T> {
        &self.real
    }

    pub fn into_real(self) -> Matrix<T> {
        self.real
    }

    pub fn re(&self) -> Matrix<T> {
        let n = self.complex_dim();
        self.real.block(0, 0, n, n)
    }

    pub fn im(&self) -> Matrix<T> {
        let n = self.complex_dim();
        self.real.block(n, 0, n, n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexMatrix {
            real: &self.real * &other.real,
            convention: self.convention,
        }
    }
}

/// `J_C = [[0, -I_n], [I_n, 0]]`, multiplication by `i`.
pub fn complex_structure<T: Scalar>(n: usize) -> Matrix<T> {
    let id = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    Matrix::from_blocks(&[vec![zero.clone(), -&id], vec![id, zero]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn unit(n: usize, i: usize, j: usize) -> Matrix<Rational> {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = q(1);
        m
    }

    #[test]
    fn identity_and_zero_products() {
        let i8 = Matrix::<Rational>::identity(8);
        assert_eq!(&i8 * &i8, i8);
        let a = Matrix::from_fn(3, 4, |i, j| q((i * 4 + j) as i64 - 5));
        let zero = Matrix::zeros(4, 2);
        assert!(mat_mul(&a, &zero).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::<Rational>::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch { .. })));
        let b = Matrix::<Rational>::zeros(3, 3);
        assert!(bracket(&a, &b).is_err());
    }

    #[test]
    fn bracket_identities() {
        let a = Matrix::from_fn(3, 3, |i, j| q((i as i64 - 2 * j as i64) * 3));
        assert!(bracket(&a, &a).unwrap().is_zero());
        assert!(bracket(&Matrix::identity(3), &a).unwrap().is_zero());
        let e12 = unit(2, 0, 1);
        let e21 = unit(2, 1, 0);
        let expected = &unit(2, 0, 0) - &unit(2, 1, 1);
        assert_eq!(bracket(&e12, &e21).unwrap(), expected);
    }

    #[test]
    fn blocks_roundtrip() {
        let a = Matrix::from_fn(2, 2, |i, j| q((i + 2 * j) as i64));
        let b = Matrix::from_fn(2, 3, |i, j| q((i * j) as i64 + 1));
        let m = Matrix::from_blocks(&[vec![a.clone(), b.clone()]]);
        assert_eq!(m.block(0, 0, 2, 2), a);
        assert_eq!(m.block(0, 2, 2, 3), b);
    }

    #[test]
    fn complex_structure_squares_to_minus_one() {
        let j = complex_structure::<Rational>(5);
        assert_eq!(&j * &j, -&Matrix::identity(10));
        let re = Matrix::from_fn(5, 5, |i, k| q(i as i64 - k as i64));
        let im = Matrix::from_fn(5, 5, |i, k| q((i * k) as i64));
        let z = ComplexMatrix::from_parts(&re, &im);
        assert!(ComplexMatrix::from_real(z.real_form().clone()).is_ok());
        assert_eq!(z.re(), re);
        assert_eq!(z.im(), im);
        assert!(ComplexMatrix::from_real(Matrix::diagonal(&[q(1), q(2)])).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = Matrix::from_fn(2, 3, |i, j| Rational::from_ratio(i as i64 - 1, j as i64 + 1));
        let v = m.to_json();
        assert_eq!(v["mode"], "exact");
        assert_eq!(Matrix::<Rational>::from_json(&v).unwrap(), m);
        assert!(Matrix::<f64>::from_json(&v).is_err());
    }
}
