//! Dense matrices over a [`Scalar`] field: fraction-free rank and
//! Gauss-Jordan inversion.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<S>>,
}

/// Rank together with the indices of the pivot columns, which form a
/// maximal independent set of columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![S::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = S::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(data: Vec<Vec<S>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i]
    }

    pub fn into_rows(self) -> Vec<Vec<S>> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|v| v.is_negligible())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.data[j][i] = v.clone();
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.data[j][i] = v.conj();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other.data[k][j].clone();
                    out.data[i][j] = out.data[i][j].clone() + t;
                }
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_rows_sized(
            rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect()).collect(),
            rows.len(),
            cols.len(),
        )
    }

    fn from_rows_sized(data: Vec<Vec<S>>, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        self.rank_info().rank
    }

    /// Fraction-free (Bareiss) elimination. Rows are first rescaled by
    /// [`Scalar::normalize_row`], which for exact rationals clears
    /// denominators so that every intermediate entry stays integral.
    pub fn rank_info(&self) -> RankInfo {
        let mut a = self.data.clone();
        for row in a.iter_mut() {
            S::normalize_row(row);
        }
        let mut prev = S::one();
        let mut r = 0;
        let mut pivot_cols = Vec::new();
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_negligible()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = pivot_row[c].clone();
            for row in rest.iter_mut() {
                let factor = row[c].clone();
                if factor.is_negligible() {
                    for v in row[c + 1..].iter_mut() {
                        *v = pivot.clone() * v.clone() / prev.clone();
                    }
                } else {
                    for j in c + 1..self.cols {
                        let v = pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                        row[j] = v / prev.clone();
                    }
                }
                row[c] = S::zero();
            }
            prev = pivot;
            pivot_cols.push(c);
            r += 1;
        }
        RankInfo { rank: r, pivot_cols }
    }

    /// Gauss-Jordan inverse; `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_negligible())?;
            a.swap(c, p);
            inv.swap(c, p);
            let pivot = a[c][c].clone();
            for j in 0..n {
                a[c][j] = a[c][j].clone() / pivot.clone();
                inv[c][j] = inv[c][j].clone() / pivot.clone();
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
        Some(Matrix { rows: n, cols: n, data: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, gaussian_int, rational, GaussianRational};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        rational(n, 1)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<BigRational>::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::<GaussianRational>::identity(3).rank(), 3);
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]]);
        assert_eq!(m.rank_info(), RankInfo { rank: 2, pivot_cols: vec![0, 1] });
    }

    #[test]
    fn rank_with_skipped_columns_and_fractions() {
        let m = Matrix::from_rows(vec![
            vec![q(0), rational(1, 2), rational(1, 3)],
            vec![q(0), rational(1, 4), rational(1, 6)],
            vec![q(0), q(0), rational(2, 7)],
        ]);
        assert_eq!(m.rank_info(), RankInfo { rank: 2, pivot_cols: vec![1, 2] });
    }

    #[test]
    fn gaussian_rank_uses_complex_dependence() {
        let i = gaussian(rational(0, 1), rational(1, 1));
        // second row is i times the first
        let m = Matrix::from_rows(vec![vec![gaussian_int(1), i.clone()], vec![i.clone(), gaussian_int(-1)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.conj_transpose().rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(7), q(4)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let singular = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn float_rank() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![0.5, 1.0]]);
        assert_eq!(m.rank(), 1);
    }
}
