//! Tree-preserving embedding: classical scaling of a dendrogram distance
//! matrix into coordinates whose squared Euclidean distances reproduce it.
//!
//! An ultrametric is always an L2-squared metric, so the double-centred Gram
//! matrix is positive semidefinite and the full-rank embedding is exact up to
//! round-off.

use std::str::FromStr;

use nalgebra::{DMatrix, RealField, SymmetricEigen};
use num_traits::Float;

use crate::dendro::UltrametricMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Relative band below zero within which eigenvalues are clamped rather than rejected.
pub const NEGATIVE_EIGEN_TOL: f64 = 1e-8;
/// Relative cutoff for [`Dims::Auto`].
pub const AUTO_DIM_TOL: f64 = 1e-9;

/// Double-centred kernel `-1/2 A D A` with `A = I - (1/n) e e^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    values: Matrix<T>,
}

impl<T: Scalar> GramMatrix<T> {
    pub fn n(&self) -> usize {
        self.values.n()
    }

    pub fn values(&self) -> &Matrix<T> {
        &self.values
    }
}

/// Number of embedding dimensions to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dims {
    /// All eigenvalues above `1e-9 * largest`.
    Auto,
    Fixed(usize),
}

impl FromStr for Dims {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Dims::Auto);
        }
        s.parse::<usize>()
            .map(Dims::Fixed)
            .map_err(|_| format!("expected a dimension count or 'auto', got '{s}'"))
    }
}

/// Coordinates (`n x l`, row-major) with their eigenvalues, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<T> {
    n: usize,
    l: usize,
    coords: Vec<T>,
    eigenvalues: Vec<T>,
    /// Most negative eigenvalue that fell inside the tolerance band and was
    /// clamped to zero; zero when nothing was clamped.
    pub clamped_negative: T,
}

impl<T: Scalar> Embedding<T> {
    /// Assembles an embedding from raw parts, e.g. when read back from disk.
    pub fn from_parts(n: usize, l: usize, coords: Vec<T>, eigenvalues: Vec<T>) -> Result<Self> {
        if coords.len() != n * l {
            return Err(Error::DimensionMismatch {
                left: coords.len(),
                right: n * l,
            });
        }
        if eigenvalues.len() != l {
            return Err(Error::DimensionMismatch {
                left: eigenvalues.len(),
                right: l,
            });
        }
        Ok(Embedding {
            n,
            l,
            coords,
            eigenvalues,
            clamped_negative: T::zero(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Retained dimension count.
    pub fn dims(&self) -> usize {
        self.l
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.l..(i + 1) * self.l]
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> T {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
    }

    /// Matrix of pairwise squared Euclidean distances.
    pub fn squared_distances(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, |i, j| self.squared_distance(i, j))
    }
}

fn center<T: Scalar>(d: &Matrix<T>) -> Matrix<T> {
    let n = d.n();
    if n == 0 {
        return Matrix::zeros(0);
    }
    let nn = T::from_usize(n).unwrap();
    let row_mean: Vec<T> = d.rows().map(|r| r.iter().fold(T::zero(), |a, &x| a + x) / nn).collect();
    let col_mean: Vec<T> = (0..n)
        .map(|j| (0..n).fold(T::zero(), |a, i| a + d[(i, j)]) / nn)
        .collect();
    let grand = row_mean.iter().fold(T::zero(), |a, &x| a + x) / nn;
    let half = T::lit(0.5);
    Matrix::from_fn(n, |i, j| -half * (d[(i, j)] - row_mean[i] - col_mean[j] + grand))
}

/// Eigenpairs sorted by eigenvalue, largest first. Each eigenvector's
/// largest-magnitude component is made positive so output is reproducible.
fn decompose<T: Scalar + RealField>(w: &Matrix<T>) -> (Vec<T>, Vec<Vec<T>>) {
    let n = w.n();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let m = DMatrix::from_row_slice(n, n, w.as_slice());
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let col: Vec<T> = eig.eigenvectors.column(k).iter().copied().collect();
            let pivot = col.iter().copied().fold(
                T::zero(),
                |best, x| {
                    if Float::abs(x) > Float::abs(best) {
                        x
                    } else {
                        best
                    }
                },
            );
            if pivot < T::zero() {
                col.into_iter().map(|x| -x).collect()
            } else {
                col
            }
        })
        .collect();
    (values, vectors)
}

fn check_psd<T: Scalar>(eigenvalues: &[T]) -> Result<T> {
    let max = eigenvalues.first().copied().unwrap_or_else(T::zero);
    let min = eigenvalues.last().copied().unwrap_or_else(T::zero);
    let band = T::tolerance(NEGATIVE_EIGEN_TOL) * Float::max(max, T::zero());
    if min < -band {
        return Err(Error::NotPsd {
            min: min.to_f64_lossless(),
            max: max.to_f64_lossless(),
        });
    }
    Ok(Float::min(min, T::zero()))
}

/// Double-centres `d`, rejecting inputs whose kernel is not PSD within
/// `1e-8 * largest eigenvalue`.
pub fn gram_from_distances<T: Scalar + RealField>(d: &UltrametricMatrix<T>) -> Result<GramMatrix<T>> {
    let values = center(d.values());
    let (eigenvalues, _) = decompose(&values);
    check_psd(&eigenvalues)?;
    Ok(GramMatrix { values })
}

/// Classical scaling of `d`.
///
/// Coordinates are the Gram eigenvectors scaled by the square roots of their
/// eigenvalues. Eigenvalues in the negative tolerance band are clamped to
/// zero; anything below it is [`Error::NotPsd`].
pub fn embed<T: Scalar + RealField>(d: &UltrametricMatrix<T>, dims: Dims) -> Result<Embedding<T>> {
    let n = d.n();
    if let Dims::Fixed(l) = dims {
        if l > n {
            return Err(Error::DimsTooLarge { dims: l, n });
        }
    }
    let w = center(d.values());
    let (eigenvalues, vectors) = decompose(&w);
    let clamped_negative = check_psd(&eigenvalues)?;
    let max = eigenvalues.first().copied().unwrap_or_else(T::zero);
    let l = match dims {
        Dims::Fixed(l) => l,
        Dims::Auto => {
            let cutoff = T::tolerance(AUTO_DIM_TOL) * max;
            eigenvalues.iter().take_while(|&&x| x > cutoff && x > T::zero()).count()
        }
    };
    let kept: Vec<T> = eigenvalues[..l].iter().map(|&x| Float::max(x, T::zero())).collect();
    let scale: Vec<T> = kept.iter().map(|&x| Float::sqrt(x)).collect();
    let mut coords = Vec::with_capacity(n * l);
    for i in 0..n {
        coords.extend(vectors.iter().zip(&scale).map(|(v, &s)| v[i] * s));
    }
    Ok(Embedding {
        n,
        l,
        coords,
        eigenvalues: kept,
        clamped_negative,
    })
}

/// `max |‖y_i - y_j‖² - d_ij| / max(d_max, 1)` over all pairs.
pub fn reconstruction_error<T: Scalar>(e: &Embedding<T>, d: &UltrametricMatrix<T>) -> Result<T> {
    if e.n() != d.n() {
        return Err(Error::DimensionMismatch {
            left: e.n(),
            right: d.n(),
        });
    }
    let n = d.n();
    let d_max = d.values().max_abs();
    let mut worst = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            let err = (e.squared_distance(i, j) - d.get(i, j)).abs();
            worst = worst.max(err);
        }
    }
    Ok(worst / d_max.max(T::one()))
}
