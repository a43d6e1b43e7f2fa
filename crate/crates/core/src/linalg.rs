//! Dense matrices over exact rationals: row reduction, rank, kernels, linear
//! solves, determinants and positive-definiteness by leading minors.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::TangentVector;
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    /// Consistent, with a particular solution and a nontrivial kernel basis.
    Underdetermined {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
    Inconsistent,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Scalar>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Scalar::zero(), |acc, k| acc + &self[(i, k)] * &rhs[(k, j)])
        }))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.data
            .iter()
            .position(|a| !a.is_zero())
            .map(|p| (p / self.cols, p % self.cols, &self.data[p]))
    }

    /// First `(i, j)` with `m[i][j] != m[j][i]`.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != self[(j, i)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(row, f)].clone();
                }
                x
            })
            .collect()
    }

    /// Solves `A x = b` exactly.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        if pivots.len() == self.cols {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Underdetermined {
                particular: x,
                kernel: self.nullspace(),
            })
        }
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    pub fn leading_principal_minors(&self) -> Vec<Scalar> {
        (1..=self.rows.min(self.cols))
            .map(|k| {
                Matrix::from_fn(k, k, |i, j| self[(i, j)].clone())
                    .determinant()
                    .expect("square submatrix")
            })
            .collect()
    }

    /// Sylvester's criterion: symmetric with all leading principal minors positive.
    pub fn check_positive_definite(&self) -> Result<()> {
        if let Some((row, col)) = self.asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        for (k, m) in self.leading_principal_minors().into_iter().enumerate() {
            if !m.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    minor: k + 1,
                    value: format_scalar(&m),
                });
            }
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_scalar).collect())
            .collect();
        write!(f, "Matrix{rows:?}")
    }
}

/// Serialized as a list of rows of `"p/q"` strings.
impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_scalar).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| crate::scalar::parse_scalar(s)).collect())
            .collect::<std::result::Result<Vec<Vec<Scalar>>, _>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

/// Linear endomorphism of the Lie algebra, stored as the matrix whose `j`-th
/// column is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Endomorphism(Matrix);

impl Endomorphism {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        Ok(Endomorphism(m))
    }

    pub fn identity(n: usize) -> Self {
        Endomorphism(Matrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Endomorphism(Matrix::zeros(n, n))
    }

    /// Endomorphism sending `e_j` to `images[j]`.
    pub fn from_images(images: &[TangentVector]) -> Result<Self> {
        let cols: Vec<Vec<Scalar>> = images.iter().map(|v| v.components().to_vec()).collect();
        Endomorphism::new(Matrix::from_columns(&cols)?)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn apply(&self, v: &TangentVector) -> Result<TangentVector> {
        Ok(TangentVector::new(self.0.mul_vec(v.components())?))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        Ok(Endomorphism(self.0.mul(&other.0)?))
    }

    pub fn add(&self, other: &Endomorphism) -> Result<Endomorphism> {
        Ok(Endomorphism(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Endomorphism) -> Result<Endomorphism> {
        Ok(Endomorphism(self.0.sub(&other.0)?))
    }

    pub fn neg(&self) -> Endomorphism {
        Endomorphism(self.0.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Endomorphism {
        Endomorphism(self.0.scale(s))
    }

    pub fn inverse(&self) -> Option<Endomorphism> {
        self.0.inverse().map(Endomorphism)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `J ∘ J = -1`.
    pub fn is_almost_complex(&self) -> bool {
        self.compose(self)
            .map(|sq| sq == Endomorphism::identity(self.dim()).neg())
            .unwrap_or(false)
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.compose(other)?.sub(&other.compose(self)?)
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endomorphism({:?})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_distinguishes_outcomes() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[int(2), int(0)]).unwrap(), Solution::Unique(vec![int(1), int(1)]));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(b.solve(&[int(1), int(3)]).unwrap(), Solution::Inconsistent);
        assert!(matches!(
            b.solve(&[int(1), int(2)]).unwrap(),
            Solution::Underdetermined { .. }
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        assert_eq!(a.determinant().unwrap(), int(-1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn sylvester_criterion() {
        assert!(m(&[&[2, 1], &[1, 2]]).check_positive_definite().is_ok());
        assert!(matches!(
            m(&[&[1, 2], &[2, 1]]).check_positive_definite(),
            Err(Error::NotPositiveDefinite { minor: 2, .. })
        ));
        assert!(matches!(
            m(&[&[1, 2], &[0, 1]]).check_positive_definite(),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        ));
    }
}
