//! Dense exact matrices: row reduction, kernels and linear solves.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Zero};
use thiserror::Error;

use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    BadLength {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::BadLength {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row vectors. `cols` is only consulted when there
    /// are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, MatrixError> {
        let ncols = rows.first().map_or(cols, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: ncols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diagonal(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// A particular solution of `Ax = b` together with a basis of `ker A`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<T> {
    pub particular: Vec<T>,
    pub kernel: Vec<Vec<T>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("inconsistent system: rank(A) = {rank_a} < rank([A|b]) = {rank_ab}")]
    Inconsistent { rank_a: usize, rank_ab: usize },
    #[error("right-hand side has {got} rows, matrix has {expected}")]
    Shape { expected: usize, got: usize },
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form. The pivot in each column is the first row
    /// (at or below the current one) with a nonzero entry.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right null space. Vector `k` has a 1 in the `k`-th
    /// non-pivot column and 0 in every other non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    /// Solves `Ax = b`; the particular solution has every free variable 0.
    pub fn solve(&self, b: &[T]) -> Result<LinearSolution<T>, SolveError> {
        if b.len() != self.rows {
            return Err(SolveError::Shape {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, br.clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(SolveError::Inconsistent {
                rank_a: pivots.len() - 1,
                rank_ab: pivots.len(),
            });
        }
        let mut particular = vec![T::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = matrix.get(r, self.cols).clone();
        }
        let mut coeffs = Matrix::zeros(matrix.rows, self.cols);
        for r in 0..matrix.rows {
            for c in 0..self.cols {
                coeffs.set(r, c, matrix.get(r, c).clone());
            }
        }
        Ok(LinearSolution {
            particular,
            kernel: kernel_from_rref(&coeffs, &pivots),
        })
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, T::one());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

fn kernel_from_rref<T: Field>(rref: &Matrix<T>, pivots: &[usize]) -> Vec<Vec<T>> {
    let cols = rref.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(r, free).clone();
            }
            v
        })
        .collect()
}

/// Column vector helper.
pub fn column<T: Clone>(values: Vec<T>) -> Matrix<T> {
    let n = values.len();
    Matrix {
        rows: n,
        cols: 1,
        data: values,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `p/q` or `p` with an optional leading sign and no whitespace.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: s.to_string(),
        reason,
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |part: &str| !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(err("numerator must be an optionally signed integer"));
    }
    let numer = BigInt::from_str(num).map_err(|_| err("numerator out of range"))?;
    let denom = match den {
        None => BigInt::from(1),
        Some(d) => {
            if !digits(d) {
                return Err(err("denominator must be an unsigned integer"));
            }
            let d = BigInt::from_str(d).map_err(|_| err("denominator out of range"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            d
        }
    };
    Ok(BigRational::new(numer, denom))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::<Rational>::identity(2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);

        let z = Matrix::<Rational>::zeros(3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let r = qm(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Rational>::identity(3).kernel_basis().is_empty());
        assert_eq!(qm(&[&[1, -1]]).kernel_basis(), vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn solve_identity_and_underdetermined() {
        let b = vec![q(3), q(-2)];
        let s = Matrix::<Rational>::identity(2).solve(&b).unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let s = qm(&[&[1, 1]]).solve(&[q(0)]).unwrap();
        assert_eq!(s.particular, vec![q(0), q(0)]);
        assert_eq!(s.kernel, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = qm(&[&[1, 1], &[2, 2]]);
        assert!(matches!(
            a.solve(&[q(1), q(3)]),
            Err(SolveError::Inconsistent {
                rank_a: 1,
                rank_ab: 2
            })
        ));
        assert!(matches!(a.solve(&[q(1)]), Err(SolveError::Shape { .. })));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = qm(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3").unwrap(), q(3));
        assert_eq!(
            parse_rational("-4/6").unwrap(),
            Rational::new((-2).into(), 3.into())
        );
        assert_eq!(
            parse_rational("+1/2").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        for bad in ["", "1/0", " 1", "1 ", "1/-2", "a", "1/", "/2", "--1", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
        assert_eq!(format_rational(&parse_rational("-4/6").unwrap()), "-2/3");
        assert_eq!(format_rational(&q(7)), "7");
    }

    #[test]
    fn small_int_ratio_agrees_with_bigrational() {
        use num_rational::Ratio;
        let big = qm(&[&[1, 2, 3], &[2, 4, 7], &[1, 1, 1]]);
        let small = big.map(|v| Ratio::<i64>::from_integer(v.to_integer().try_into().unwrap()));
        assert_eq!(big.rank(), small.rank());
        assert_eq!(big.kernel_basis().len(), small.kernel_basis().len());
    }
}
