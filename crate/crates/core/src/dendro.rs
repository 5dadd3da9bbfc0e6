//! Level functions over a dendrogram and the induced pairwise distances.
//!
//! A level function `f` is zero exactly on leaves and grows strictly toward
//! the root. The distance between two objects is `f` of the smallest
//! sub-dendrogram containing both, which is the subtree rooted at their
//! lowest common ancestor. The result is always an ultrametric.

use std::fmt;
use std::str::FromStr;

use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::linkage::Criterion;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Which node function serves as the level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelKind {
    /// Merge linkage, shifted to be nonnegative when needed. Only valid for
    /// monotone, non-HCC dendrograms.
    LinkageValue,
    /// Integer tree level: `max(level children) + 1`.
    TreeLevel,
}

impl LevelKind {
    pub const ALL: [LevelKind; 2] = [LevelKind::LinkageValue, LevelKind::TreeLevel];

    pub fn name(self) -> &'static str {
        match self {
            LevelKind::LinkageValue => "linkage",
            LevelKind::TreeLevel => "level",
        }
    }

    /// Whether this kind is a valid level function for `d`.
    pub fn check<T: Scalar>(self, d: &Dendrogram<T>) -> Result<()> {
        match self {
            LevelKind::TreeLevel => Ok(()),
            LevelKind::LinkageValue => {
                if d.criterion() == Some(Criterion::Hcc) {
                    return Err(Error::InvalidLevelKind(
                        "HCC linkage is not shift invariant and cannot be made a level function".into(),
                    ));
                }
                if !d.is_monotone() {
                    return Err(Error::InvalidLevelKind(
                        "merge linkages decrease along the merge sequence".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for LevelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LevelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linkage" => Ok(LevelKind::LinkageValue),
            "level" => Ok(LevelKind::TreeLevel),
            other => Err(format!("unknown level kind '{other}'")),
        }
    }
}

/// Shift added to internal linkages so that the smallest becomes positive.
///
/// Zero when every internal linkage is already nonnegative; otherwise
/// `-m + 1e-9 * (1 + |m|)` for minimum linkage `m`.
pub fn canonical_shift<T: Scalar>(d: &Dendrogram<T>) -> T {
    let m = d.merges().iter().map(|r| r.linkage).fold(T::infinity(), T::min);
    if m < T::zero() {
        -m + T::lit(1e-9) * (T::one() + m.abs())
    } else {
        T::zero()
    }
}

/// Level-function value of every node (leaves first, then internal nodes).
pub fn level_values<T: Scalar>(d: &Dendrogram<T>, kind: LevelKind) -> Result<Vec<T>> {
    kind.check(d)?;
    let n = d.n();
    let mut f = vec![T::zero(); d.node_count()];
    match kind {
        LevelKind::TreeLevel => {
            for (v, slot) in f.iter_mut().enumerate().skip(n) {
                *slot = T::from_usize(d.level(v)).unwrap();
            }
        }
        LevelKind::LinkageValue => {
            let s = canonical_shift(d);
            for (t, m) in d.merges().iter().enumerate() {
                f[n + t] = m.linkage + s;
            }
        }
    }
    Ok(f)
}

/// Level-function value of a single node; leaves are 0 under both kinds.
pub fn level_of<T: Scalar>(d: &Dendrogram<T>, node: usize, kind: LevelKind) -> Result<T> {
    if node >= d.node_count() {
        return Err(Error::InvalidDendrogram(format!(
            "node {node} does not exist (tree has {} nodes)",
            d.node_count()
        )));
    }
    Ok(level_values(d, kind)?[node])
}

/// Symmetric zero-diagonal matrix of dendrogram-derived distances.
#[derive(Debug, Clone, PartialEq)]
pub struct UltrametricMatrix<T> {
    values: Matrix<T>,
}

impl<T: Scalar> UltrametricMatrix<T> {
    /// Validates `values` at absolute tolerance `tol`.
    pub fn new(values: Matrix<T>, tol: T) -> Result<Self> {
        let report = validate_ultrametric(&values, tol);
        if report.is_ultrametric() {
            Ok(UltrametricMatrix { values })
        } else {
            Err(Error::NotUltrametric(report.to_string()))
        }
    }

    /// Wraps `values` without checking anything. Downstream routines still
    /// guard against inputs that cannot be embedded.
    pub fn new_unchecked(values: Matrix<T>) -> Self {
        UltrametricMatrix { values }
    }

    pub fn n(&self) -> usize {
        self.values.n()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[(i, j)]
    }

    pub fn values(&self) -> &Matrix<T> {
        &self.values
    }

    pub fn into_values(self) -> Matrix<T> {
        self.values
    }
}

/// Pairwise distances `f(lca(i, j))` for the dendrogram under `kind`.
///
/// Filled merge by merge: every pair split across the two children of a node
/// has that node as lowest common ancestor.
pub fn dendrogram_distances<T: Scalar>(d: &Dendrogram<T>, kind: LevelKind) -> Result<UltrametricMatrix<T>> {
    let f = level_values(d, kind)?;
    let n = d.n();
    let mut out = Matrix::zeros(n);
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    members.resize(d.node_count(), Vec::new());
    for (t, m) in d.merges().iter().enumerate() {
        let value = f[n + t];
        let left = std::mem::take(&mut members[m.left]);
        let right = std::mem::take(&mut members[m.right]);
        for &i in &left {
            for &j in &right {
                out[(i, j)] = value;
                out[(j, i)] = value;
            }
        }
        let mut joined = left;
        joined.extend(right);
        members[n + t] = joined;
    }
    Ok(UltrametricMatrix { values: out })
}

/// A violated ultrametric condition with its first witness (row-major scan).
#[derive(Debug, Clone, PartialEq)]
pub enum Violation<T> {
    Negative {
        i: usize,
        j: usize,
        value: T,
    },
    Asymmetric {
        i: usize,
        j: usize,
    },
    NonzeroDiagonal {
        i: usize,
        value: T,
    },
    /// A distinct pair at distance exactly zero. Reported, not repaired; it
    /// does not by itself make the matrix non-ultrametric.
    ZeroOffDiagonal {
        i: usize,
        j: usize,
    },
    /// `d(i, j) > max(d(i, k), d(k, j)) + tol`.
    Triple {
        i: usize,
        j: usize,
        k: usize,
        dij: T,
        dik: T,
        dkj: T,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct UltrametricReport<T> {
    pub violations: Vec<Violation<T>>,
}

impl<T: Scalar> UltrametricReport<T> {
    /// No violation other than distinct-pair zeros.
    pub fn is_ultrametric(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, Violation::ZeroOffDiagonal { .. }))
    }

    /// No violation at all.
    pub fn is_strict(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn triple(&self) -> Option<(usize, usize, usize)> {
        self.violations.iter().find_map(|v| match v {
            Violation::Triple { i, j, k, .. } => Some((*i, *j, *k)),
            _ => None,
        })
    }
}

impl<T: Scalar> fmt::Display for UltrametricReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ultrametric");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                Violation::Negative { i, j, value } => format!("negative entry {value} at ({i}, {j})"),
                Violation::Asymmetric { i, j } => format!("asymmetric at ({i}, {j})"),
                Violation::NonzeroDiagonal { i, value } => format!("diagonal entry {value} at {i}"),
                Violation::ZeroOffDiagonal { i, j } => format!("zero distance between distinct {i} and {j}"),
                Violation::Triple { i, j, k, dij, dik, dkj } => {
                    format!("d({i},{j}) = {dij} > max(d({i},{k}) = {dik}, d({k},{j}) = {dkj})")
                }
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks nonnegativity, symmetry, zero diagonal, distinct-pair zeros and
/// the three-point condition, reporting the first witness of each.
pub fn validate_ultrametric<T: Scalar>(m: &Matrix<T>, tol: T) -> UltrametricReport<T> {
    let n = m.n();
    let mut negative = None;
    let mut asym = None;
    let mut diag = None;
    let mut zero = None;
    let mut triple = None;
    for i in 0..n {
        let dii = m[(i, i)];
        if diag.is_none() && dii.abs() > tol {
            diag = Some(Violation::NonzeroDiagonal { i, value: dii });
        }
        for j in 0..n {
            let dij = m[(i, j)];
            if negative.is_none() && dij < -tol {
                negative = Some(Violation::Negative { i, j, value: dij });
            }
            if asym.is_none() && (dij - m[(j, i)]).abs() > tol {
                asym = Some(Violation::Asymmetric { i, j });
            }
            if i != j && zero.is_none() && dij == T::zero() {
                zero = Some(Violation::ZeroOffDiagonal { i, j });
            }
            if triple.is_none() {
                for k in 0..n {
                    let (dik, dkj) = (m[(i, k)], m[(k, j)]);
                    if dij > dik.max(dkj) + tol {
                        triple = Some(Violation::Triple { i, j, k, dij, dik, dkj });
                        break;
                    }
                }
            }
        }
    }
    let violations = [negative, asym, diag, zero, triple].into_iter().flatten().collect();
    UltrametricReport { violations }
}
