//! Dense square matrices and the validated signed (dis)similarity matrix.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense `n x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// Builds from nested rows, failing with [`Error::NonSquare`] on ragged input.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NonSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { n, data })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Largest absolute entry, zero for the empty matrix.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Largest absolute entrywise difference. Panics on size mismatch.
    pub fn max_abs_diff(&self, other: &Matrix<T>) -> T {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Whether a [`SignedMatrix`] holds similarities `S` or dissimilarities `D = -S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Similarity,
    Dissimilarity,
}

impl MatrixKind {
    pub fn flipped(self) -> Self {
        match self {
            MatrixKind::Similarity => MatrixKind::Dissimilarity,
            MatrixKind::Dissimilarity => MatrixKind::Similarity,
        }
    }
}

/// Symmetric, finite, zero-diagonal matrix of signed pairwise scores.
///
/// Entries may be negative. The diagonal is always exactly zero and never
/// participates in any criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMatrix<T> {
    values: Matrix<T>,
    kind: MatrixKind,
}

/// Validates raw rows into a [`SignedMatrix`].
///
/// Symmetry is checked, never repaired: any pair with
/// `|raw[i][j] - raw[j][i]| > 1e-12 * max|raw|` is rejected. The diagonal is
/// forced to zero.
pub fn validate_matrix<T: Scalar>(raw: &[Vec<T>], kind: MatrixKind) -> Result<SignedMatrix<T>> {
    let m = Matrix::from_rows(raw)?;
    SignedMatrix::new(m, kind)
}

impl<T: Scalar> SignedMatrix<T> {
    pub fn new(mut values: Matrix<T>, kind: MatrixKind) -> Result<Self> {
        let n = values.n();
        for i in 0..n {
            for j in 0..n {
                if !values[(i, j)].is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        let tol = T::tolerance(1e-12) * values.max_abs();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (values[(i, j)], values[(j, i)]);
                if (a - b).abs() > tol {
                    return Err(Error::Asymmetric {
                        i,
                        j,
                        a: a.to_f64_lossless(),
                        b: b.to_f64_lossless(),
                    });
                }
            }
            values[(i, i)] = T::zero();
        }
        Ok(SignedMatrix { values, kind })
    }

    /// Builds a matrix from the strict upper triangle, mirrored.
    ///
    /// `f` is called once per pair `i < j` in row-major order.
    pub fn from_upper(n: usize, kind: MatrixKind, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut values = Matrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let x = f(i, j);
                values[(i, j)] = x;
                values[(j, i)] = x;
            }
        }
        SignedMatrix { values, kind }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.values.n()
    }

    #[inline]
    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[(i, j)]
    }

    pub fn values(&self) -> &Matrix<T> {
        &self.values
    }

    pub fn into_values(self) -> Matrix<T> {
        self.values
    }

    /// Entrywise negation with the kind flipped. An exact involution.
    pub fn negate(&self) -> Self {
        SignedMatrix {
            values: self.values.map(|x| -x),
            kind: self.kind.flipped(),
        }
    }

    /// Adds `alpha` to every off-diagonal entry; the diagonal stays zero.
    pub fn shift(&self, alpha: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFiniteShift);
        }
        let n = self.n();
        let values = Matrix::from_fn(n, |i, j| if i == j { T::zero() } else { self.values[(i, j)] + alpha });
        for i in 0..n {
            for j in 0..n {
                if !values[(i, j)].is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        Ok(SignedMatrix {
            values,
            kind: self.kind,
        })
    }

    /// The same data viewed as `kind`, negating if needed.
    pub fn as_kind(&self, kind: MatrixKind) -> Self {
        if self.kind == kind {
            self.clone()
        } else {
            self.negate()
        }
    }

    pub fn to_dissimilarity(&self) -> Self {
        self.as_kind(MatrixKind::Dissimilarity)
    }

    pub fn to_similarity(&self) -> Self {
        self.as_kind(MatrixKind::Similarity)
    }
}

/// Free-function form of [`SignedMatrix::negate`].
pub fn negate<T: Scalar>(m: &SignedMatrix<T>) -> SignedMatrix<T> {
    m.negate()
}
