use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, RatMatrix};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of small integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.as_ref().len(), ncols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        Self { rows: nrows, cols: ncols, data }
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], ncols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(LinalgError::Shape("ragged rows".into()));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols: ncols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], nrows: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != nrows {
                return Err(LinalgError::Shape(format!("column {j} has length {}, expected {nrows}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_int(self)
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix, LinalgError> {
        let inv = self.to_rational().inverse()?;
        inv.to_integer().ok_or(LinalgError::Singular)
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntMatrix{:?}",
            self.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
        )
    }
}

/// gcd of all entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).abs().is_one()
}
