//! Dense matrices over GF(q) and over the rationals.
//!
//! [`CodeMatrix`] carries generator and parity-check matrices; its
//! elimination routines are exact in the field. [`RationalMatrix`] holds the
//! moment systems, which are always solved in arbitrary-precision rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("column index {0} selected twice")]
    DuplicateIndex(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("singular system (rank {rank})")]
    Singular {
        rank: usize,
        /// Nonzero vector `x` with `A x = 0`.
        kernel: Vec<BigRational>,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Binomial coefficient with `binom(a, b) = 0` whenever `b < 0`, `b > a` or `a < 0`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    BigInt::from(binom_u(a as u64, b as u64))
}

pub fn binom_u(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// A `rows x cols` matrix over a finite field, stored row-major as canonical
/// element encodings.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Field,
}

impl fmt::Debug for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CodeMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl CodeMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= field.order()) {
            return Err(FieldError::ValueOutOfRange {
                value: bad as u64,
                q: field.order(),
            }
            .into());
        }
        Ok(CodeMatrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    /// Builds a matrix from rows of equal length. An empty row list yields a
    /// `0 x cols` matrix only through [`CodeMatrix::zeros`].
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        CodeMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> CodeMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        CodeMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
            field: self.field.clone(),
        }
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &CodeMatrix) -> Result<CodeMatrix, MatrixError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch.into());
        }
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} vs {} columns",
                self.cols, other.cols
            )));
        }
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let dot = self
                    .row(i)
                    .iter()
                    .zip(other.row(j))
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                data.push(dot);
            }
        }
        Ok(CodeMatrix {
            rows: self.rows,
            cols: other.rows,
            data,
            field: f.clone(),
        })
    }

    /// Row-vector times matrix: `v * self`.
    pub fn left_mul(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &coef) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(coef, x));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    self.data.swap(pr * cols + c, row * cols + c);
                }
            }
            let inv = f.inv(self.data[row * cols + col]).expect("pivot is nonzero");
            for c in 0..cols {
                self.data[row * cols + c] = f.mul(self.data[row * cols + c], inv);
            }
            for r in 0..self.rows {
                let factor = self.data[r * cols + col];
                if r == row || factor == 0 {
                    continue;
                }
                for c in 0..cols {
                    let sub = f.mul(factor, self.data[row * cols + c]);
                    self.data[r * cols + c] = f.sub(self.data[r * cols + c], sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (CodeMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Rank over GF(q).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of the right kernel `{v : self * v^T = 0}`.
    pub fn kernel_basis(&self) -> CodeMatrix {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * self.cols);
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            data.extend(v);
        }
        CodeMatrix {
            rows: free.len(),
            cols: self.cols,
            data,
            field: f.clone(),
        }
    }

    /// Submatrix on the given 0-based columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<CodeMatrix, MatrixError> {
        let mut seen = vec![false; self.cols];
        for &i in indices {
            if i >= self.cols {
                return Err(MatrixError::IndexOutOfRange {
                    index: i,
                    cols: self.cols,
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(MatrixError::DuplicateIndex(i));
            }
        }
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for r in 0..self.rows {
            data.extend(indices.iter().map(|&c| self.get(r, c)));
        }
        Ok(CodeMatrix {
            rows: self.rows,
            cols: indices.len(),
            data,
            field: self.field.clone(),
        })
    }
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_integer_rows(rows: &[Vec<BigInt>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j].clone())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn select_rows(&self, rows: &[usize]) -> RationalMatrix {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> RationalMatrix {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix, MatrixError> {
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(BigRational::zero(), |acc, l| acc + self.get(i, l) * other.get(l, j))
        }))
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(BigRational::zero(), |acc, (a, x)| acc + a * x))
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.data[r * cols + col].is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    m.data.swap(pr * cols + c, row * cols + c);
                }
            }
            let pivot = m.data[row * cols + col].clone();
            for c in col..cols {
                let v = &m.data[row * cols + c] / &pivot;
                m.data[row * cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row || m.data[r * cols + col].is_zero() {
                    continue;
                }
                let factor = m.data[r * cols + col].clone();
                for c in col..cols {
                    let sub = &factor * &m.data[row * cols + c];
                    m.data[r * cols + c] -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A nonzero vector in the right kernel, if one exists.
    pub fn kernel_vector(&self) -> Option<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut v = vec![BigRational::zero(); self.cols];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(i, free).clone();
        }
        Some(v)
    }

    /// Determinant of a square integer-valued matrix by fraction-free
    /// (Bareiss) elimination. Panics when an entry is not an integer.
    pub fn integer_determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        assert!(x.is_integer(), "integer_determinant on a non-integer matrix");
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(bareiss_determinant(&mut a))
    }
}

fn bareiss_determinant(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Exact solution of the square system `a x = b`.
///
/// A singular `a` yields [`MatrixError::Singular`] with its rank and a
/// nonzero kernel vector.
pub fn solve_exact(a: &RationalMatrix, b: &[BigRational]) -> Result<Vec<BigRational>, MatrixError> {
    if a.rows != a.cols {
        return Err(MatrixError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if b.len() != a.rows {
        return Err(MatrixError::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let n = a.rows;
    let augmented = RationalMatrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = augmented.rref();
    let rank = pivots.iter().filter(|&&p| p < n).count();
    if rank < n {
        let kernel = a.kernel_vector().expect("rank-deficient matrix has a kernel");
        return Err(MatrixError::Singular { rank, kernel });
    }
    Ok((0..n).map(|i| r.get(i, n).clone()).collect())
}

/// The `r x (t+1)` truncated Pascal matrix with entry `(i, j) = binom(t - j, i)`.
pub fn truncated_pascal(r: usize, t: usize) -> RationalMatrix {
    RationalMatrix::from_fn(r, t + 1, |i, j| rat(binom(t as i64 - j as i64, i as i64)))
}

/// True when every `r x r` minor of the truncated Pascal matrix `P_{r,t}` is nonzero.
pub fn pascal_minor_check(r: usize, t: usize) -> bool {
    let p = truncated_pascal(r, t);
    let ints: Vec<Vec<BigInt>> = (0..r)
        .map(|i| p.row(i).iter().map(|x| x.to_integer()).collect())
        .collect();
    let mut all_nonzero = true;
    for_each_subset(t + 1, r, |cols| {
        let mut minor: Vec<Vec<BigInt>> =
            ints.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        if bareiss_determinant(&mut minor).is_zero() {
            all_nonzero = false;
            return false;
        }
        true
    });
    all_nonzero
}

/// Visits every `k`-subset of `0..n` in lexicographic order; the visitor
/// returns `false` to stop early.
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True when every entry is a nonnegative integer.
pub fn all_nonnegative_integers(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_integer() && !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom_u(24, 12), BigUint::from(2_704_156u32));
    }

    #[test]
    fn rank_examples() {
        let f = gf2();
        assert_eq!(CodeMatrix::zeros(&f, 2, 3).rank(), 0);
        assert_eq!(CodeMatrix::identity(&f, 4).rank(), 4);
        assert_eq!(CodeMatrix::from_rows(&f, &[vec![1, 1], vec![1, 1]]).unwrap().rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf2();
        assert_eq!(CodeMatrix::identity(&f, 3).kernel_basis().rows(), 0);
        let k = CodeMatrix::from_rows(&f, &[vec![1, 1]]).unwrap().kernel_basis();
        assert_eq!(k.row_vecs(), vec![vec![1, 1]]);
    }

    #[test]
    fn select_columns_examples() {
        let f = Field::prime(5).unwrap();
        let m = CodeMatrix::from_rows(&f, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(m.select_columns(&[0, 1, 2]).unwrap(), m);
        assert_eq!(m.select_columns(&[0, 2]).unwrap().row_vecs(), vec![vec![1, 3]]);
        assert_eq!(
            m.select_columns(&[0, 3]).unwrap_err(),
            MatrixError::IndexOutOfRange { index: 3, cols: 3 }
        );
        assert_eq!(m.select_columns(&[1, 1]).unwrap_err(), MatrixError::DuplicateIndex(1));
    }

    #[test]
    fn solve_identity_and_singular() {
        let b = vec![r(3), r(-2)];
        assert_eq!(solve_exact(&RationalMatrix::identity(2), &b).unwrap(), b);
        let a = RationalMatrix::from_fn(2, 2, |_, _| r(1));
        match solve_exact(&a, &b) {
            Err(MatrixError::Singular { rank, kernel }) => {
                assert_eq!(rank, 1);
                assert!(a.mul_vec(&kernel).unwrap().iter().all(Zero::is_zero));
                assert!(kernel.iter().any(|x| !x.is_zero()));
            }
            other => panic!("expected singular, got {other:?}"),
        }
        assert!(matches!(
            solve_exact(&RationalMatrix::zeros(2, 3), &b),
            Err(MatrixError::NotSquare { .. })
        ));
    }

    #[test]
    fn golay_three_by_three_system() {
        // 120 A8 + 66 A12 + 28 A16 = 276 * 1023; A8 + A12 + A16 = 4094; A8 - A16 = 0
        let a = RationalMatrix::from_integer_rows(&[
            vec![120.into(), 66.into(), 28.into()],
            vec![1.into(), 1.into(), 1.into()],
            vec![1.into(), 0.into(), (-1).into()],
        ])
        .unwrap();
        let x = solve_exact(&a, &[r(282_348), r(4094), r(0)]).unwrap();
        assert_eq!(x, vec![r(759), r(2576), r(759)]);
    }

    #[test]
    fn pascal_examples() {
        assert_eq!(truncated_pascal(1, 2), RationalMatrix::from_fn(1, 3, |_, _| r(1)));
        let p = truncated_pascal(2, 2);
        let row1: Vec<BigRational> = p.row(1).to_vec();
        assert_eq!(row1, vec![r(2), r(1), r(0)]);
        assert!(pascal_minor_check(3, 8));
    }

    #[test]
    fn bareiss_matches_known_determinants() {
        let m = RationalMatrix::from_integer_rows(&[
            vec![2.into(), 0.into(), 1.into()],
            vec![1.into(), 3.into(), 2.into()],
            vec![1.into(), 1.into(), 2.into()],
        ])
        .unwrap();
        assert_eq!(m.integer_determinant().unwrap(), BigInt::from(6));
        let swap_needed = RationalMatrix::from_integer_rows(&[
            vec![0.into(), 1.into()],
            vec![1.into(), 0.into()],
        ])
        .unwrap();
        assert_eq!(swap_needed.integer_determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_subset(3, 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    fn gf_matrix() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
        (prop::sample::select(vec![2u32, 3, 4, 5, 7]), 1usize..5, 1usize..7).prop_flat_map(|(q, r, c)| {
            (Just(q), Just(r), Just(c), prop::collection::vec(0..q, r * c))
        })
    }

    fn field_of(q: u32) -> Field {
        match q {
            4 => Field::new(2, 2, None).unwrap(),
            p => Field::prime(p).unwrap(),
        }
    }

    proptest! {
        #[test]
        fn rank_nullity((q, rows, cols, data) in gf_matrix()) {
            let m = CodeMatrix::new(&field_of(q), rows, cols, data).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.rows(), cols);
            prop_assert!(m.rank() <= rows.min(cols));
            if k.rows() > 0 {
                prop_assert!(m.mul_transpose(&k).unwrap().is_zero());
                prop_assert_eq!(k.rank(), k.rows());
            }
        }

        #[test]
        fn column_selection_rank_bound((q, rows, cols, data) in gf_matrix(), mask in any::<u8>()) {
            let m = CodeMatrix::new(&field_of(q), rows, cols, data).unwrap();
            let idx: Vec<usize> = (0..cols).filter(|i| mask & (1 << i) != 0).collect();
            let sub = m.select_columns(&idx).unwrap();
            prop_assert!(sub.rank() <= m.rank().min(idx.len()));
        }

        #[test]
        fn solve_round_trip(entries in prop::collection::vec(-6i64..7, 16), rhs in prop::collection::vec(-20i64..21, 4)) {
            let a = RationalMatrix::from_fn(4, 4, |i, j| r(entries[i * 4 + j]));
            let b: Vec<BigRational> = rhs.iter().map(|&v| r(v)).collect();
            match solve_exact(&a, &b) {
                Ok(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
                Err(MatrixError::Singular { rank, kernel }) => {
                    prop_assert!(rank < 4);
                    prop_assert_eq!(a.rank(), rank);
                    prop_assert!(a.mul_vec(&kernel).unwrap().iter().all(Zero::is_zero));
                }
                Err(e) => prop_assert!(false, "unexpected {:?}", e),
            }
        }
    }
}
