use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal,
/// `d[i][i] | d[i+1][i+1]`, all diagonal entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries of `d`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elimination with the pivot of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
