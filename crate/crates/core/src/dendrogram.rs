//! Dendrogram and flat partition types.
//!
//! Node ids follow the linkage-matrix convention: leaves are `0..n` and the
//! node created by merge `t` gets id `n + t`, so the root is `2n - 2`.

use crate::error::{Error, Result};
use crate::linkage::Criterion;
use crate::scalar::Scalar;

/// One agglomeration step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeRecord<T> {
    pub left: usize,
    pub right: usize,
    /// Inter-cluster dissimilarity at merge time, under the criterion that built the tree.
    pub linkage: T,
    /// Leaves under the new node.
    pub size: usize,
}

/// A full binary dendrogram over `n` leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram<T> {
    n: usize,
    merges: Vec<MergeRecord<T>>,
    levels: Vec<usize>,
    sizes: Vec<usize>,
    criterion: Option<Criterion>,
}

impl<T: Scalar> Dendrogram<T> {
    /// Checks the merge list and derives per-node levels and sizes.
    pub fn new(n: usize, merges: Vec<MergeRecord<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if merges.len() != n - 1 {
            return Err(Error::InvalidDendrogram(format!(
                "{} leaves need {} merges, got {}",
                n,
                n - 1,
                merges.len()
            )));
        }
        let total = 2 * n - 1;
        let mut levels = vec![0usize; total];
        let mut sizes = vec![1usize; total];
        let mut used = vec![false; total];
        for (t, m) in merges.iter().enumerate() {
            let id = n + t;
            if m.left == m.right {
                return Err(Error::InvalidDendrogram(format!(
                    "merge {t} joins node {} with itself",
                    m.left
                )));
            }
            for child in [m.left, m.right] {
                if child >= id {
                    return Err(Error::InvalidDendrogram(format!(
                        "merge {t} refers to node {child} before it exists"
                    )));
                }
                if used[child] {
                    return Err(Error::InvalidDendrogram(format!(
                        "merge {t} reuses node {child} as a child"
                    )));
                }
                used[child] = true;
            }
            let size = sizes[m.left] + sizes[m.right];
            if m.size != size {
                return Err(Error::InvalidDendrogram(format!(
                    "merge {t} has size {} but its children cover {size}",
                    m.size
                )));
            }
            if !m.linkage.is_finite() {
                return Err(Error::InvalidDendrogram(format!("merge {t} has a non-finite linkage")));
            }
            sizes[id] = size;
            levels[id] = levels[m.left].max(levels[m.right]) + 1;
        }
        Ok(Dendrogram {
            n,
            merges,
            levels,
            sizes,
            criterion: None,
        })
    }

    /// Tags the dendrogram with the criterion that produced it.
    pub fn with_criterion(mut self, criterion: Criterion) -> Self {
        self.criterion = Some(criterion);
        self
    }

    pub fn criterion(&self) -> Option<Criterion> {
        self.criterion
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn merges(&self) -> &[MergeRecord<T>] {
        &self.merges
    }

    pub fn node_count(&self) -> usize {
        2 * self.n - 1
    }

    pub fn root(&self) -> usize {
        2 * self.n - 2
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node < self.n
    }

    /// Tree level: 0 for leaves, `max(level children) + 1` otherwise.
    pub fn level(&self, node: usize) -> usize {
        self.levels[node]
    }

    pub fn size(&self, node: usize) -> usize {
        self.sizes[node]
    }

    /// Merge linkage of an internal node; `None` for leaves.
    pub fn linkage(&self, node: usize) -> Option<T> {
        node.checked_sub(self.n).map(|t| self.merges[t].linkage)
    }

    /// Parent of every node; the root maps to `None`.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.node_count()];
        for (t, m) in self.merges.iter().enumerate() {
            parent[m.left] = Some(self.n + t);
            parent[m.right] = Some(self.n + t);
        }
        parent
    }

    /// Leaf ids under `node`, ascending.
    pub fn leaves(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes[node]);
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if v < self.n {
                out.push(v);
            } else {
                let m = &self.merges[v - self.n];
                stack.push(m.left);
                stack.push(m.right);
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether merge linkages never decrease along the merge sequence, up to
    /// a relative round-off band of 1e-12 (the weighted average update can
    /// land one ulp below its predecessor).
    pub fn is_monotone(&self) -> bool {
        let tol = T::tolerance(1e-12);
        self.merges.windows(2).all(|w| {
            let (a, b) = (w[0].linkage, w[1].linkage);
            a <= b + tol * a.abs().max(b.abs())
        })
    }
}

/// Flat clustering: one cluster label per object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn new(labels: Vec<usize>) -> Self {
        Partition { labels }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Relabels clusters `0..K` in order of first occurrence.
    pub fn canonical(&self) -> Partition {
        let mut map = std::collections::HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    pub fn num_clusters(&self) -> usize {
        let mut seen: Vec<usize> = self.labels.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Equality up to relabeling.
    pub fn same_clustering(&self, other: &Partition) -> bool {
        self.canonical() == other.canonical()
    }
}

impl From<Vec<usize>> for Partition {
    fn from(labels: Vec<usize>) -> Self {
        Partition::new(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(left: usize, right: usize, linkage: f64, size: usize) -> MergeRecord<f64> {
        MergeRecord {
            left,
            right,
            linkage,
            size,
        }
    }

    #[test]
    fn chain_levels_and_sizes() {
        let d = Dendrogram::new(3, vec![rec(0, 1, 1.0, 2), rec(3, 2, 2.0, 3)]).unwrap();
        assert_eq!(d.level(0), 0);
        assert_eq!(d.level(3), 1);
        assert_eq!(d.level(4), 2);
        assert_eq!(d.size(d.root()), 3);
        assert_eq!(d.leaves(4), vec![0, 1, 2]);
        assert_eq!(d.linkage(4), Some(2.0));
        assert_eq!(d.linkage(1), None);
        assert_eq!(d.parents(), vec![Some(3), Some(3), Some(4), Some(4), None]);
    }

    #[test]
    fn single_leaf_has_no_merges() {
        let d = Dendrogram::<f64>::new(1, vec![]).unwrap();
        assert_eq!(d.root(), 0);
        assert_eq!(d.size(0), 1);
    }

    #[test]
    fn rejects_malformed_merge_lists() {
        assert!(Dendrogram::new(3, vec![rec(0, 1, 1.0, 2)]).is_err());
        assert!(Dendrogram::new(3, vec![rec(0, 0, 1.0, 2), rec(3, 2, 2.0, 3)]).is_err());
        assert!(Dendrogram::new(3, vec![rec(0, 4, 1.0, 2), rec(3, 2, 2.0, 3)]).is_err());
        assert!(Dendrogram::new(3, vec![rec(0, 1, 1.0, 2), rec(3, 0, 2.0, 3)]).is_err());
        assert!(Dendrogram::new(3, vec![rec(0, 1, 1.0, 3), rec(3, 2, 2.0, 3)]).is_err());
        assert!(Dendrogram::<f64>::new(0, vec![]).is_err());
    }

    #[test]
    fn canonical_relabels_by_first_occurrence() {
        let p = Partition::new(vec![7, 7, 3, 9, 3]);
        assert_eq!(p.canonical().labels(), &[0, 0, 1, 2, 1]);
        assert_eq!(p.num_clusters(), 3);
        assert!(p.same_clustering(&Partition::new(vec![1, 1, 0, 2, 0])));
    }
}
