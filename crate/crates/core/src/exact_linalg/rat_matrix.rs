use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError};

/// Dense row-major matrix over the rationals. `BigRational` keeps every
/// entry reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_int(&IntMatrix::from_rows(rows))
    }

    pub fn from_columns(columns: &[Vec<BigRational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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

    pub fn scaled(&self, k: &BigRational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-BigRational::one())
    }

    pub fn checked_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
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

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Copies `block` into `self` with its top-left corner at (r0, c0),
    /// adding to what is already there.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = &block[(i, j)];
                if !v.is_zero() {
                    self[(r0 + i, c0 + j)] += v;
                }
            }
        }
    }

    /// Rows `rows` of the matrix, in the given order.
    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> RatMatrix {
        let mut out = RatMatrix::zeros(rows.len(), self.cols);
        for (k, i) in rows.enumerate() {
            for j in 0..self.cols {
                out[(k, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kronecker(&self, rhs: &RatMatrix) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * &rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = &f * &a[(r, j)];
                    a[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel_basis(&self) -> RatMatrix {
        let Echelon { matrix: e, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -e[(r, f)].clone();
            }
        }
        basis
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e.matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b`; `None` if inconsistent. Picks free variables zero.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Echelon { matrix: e, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = e[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Integer matrix with the same entries, if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data: Option<Vec<BigInt>> = self.data.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
        IntMatrix::from_vec(self.rows, self.cols, data?).ok()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl std::ops::Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

/// Convenience for the common `m · basis = 0` check in callers and tests.
pub fn rational_kernel_basis(m: &RatMatrix) -> RatMatrix {
    m.kernel_basis()
}
