//! Agglomerative clustering under single, complete, average and
//! hierarchical-correlation (HCC) linkage, plus dendrogram cutting.
//!
//! Every criterion runs through the same merge loop on dissimilarities. HCC's
//! inter-cluster dissimilarity is the plain sum of pairwise dissimilarities,
//! i.e. minus the summed similarity, so "merge the pair with maximal summed
//! similarity" and "merge the pair with minimal summed dissimilarity" are the
//! same step.
//!
//! The loop keeps, for every active cluster, the index and value of its
//! nearest neighbour. After a merge only the entries that pointed at one of
//! the two consumed clusters are rescanned; the others can only be improved
//! by the new cluster, which is a single comparison.

use std::fmt;
use std::str::FromStr;

use crate::dendrogram::{Dendrogram, MergeRecord, Partition};
use crate::error::{Error, Result};
use crate::matrix::SignedMatrix;
use crate::scalar::Scalar;

/// Inter-cluster dissimilarity rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Nearest members.
    Single,
    /// Farthest members.
    Complete,
    /// Mean over all cross pairs.
    Average,
    /// Sum over all cross pairs (hierarchical correlation clustering).
    Hcc,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Single,
        Criterion::Complete,
        Criterion::Average,
        Criterion::Hcc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Single => "single",
            Criterion::Complete => "complete",
            Criterion::Average => "average",
            Criterion::Hcc => "hcc",
        }
    }

    /// Dissimilarity between `u ∪ v` and `w` from the children's values.
    #[inline]
    fn update<T: Scalar>(self, d_uw: T, d_vw: T, size_u: usize, size_v: usize) -> T {
        match self {
            Criterion::Single => d_uw.min(d_vw),
            Criterion::Complete => d_uw.max(d_vw),
            Criterion::Average => {
                let su = T::from_usize(size_u).unwrap();
                let sv = T::from_usize(size_v).unwrap();
                (su * d_uw + sv * d_vw) / (su + sv)
            }
            Criterion::Hcc => d_uw + d_vw,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "single" | "sl" => Ok(Criterion::Single),
            "complete" | "cl" => Ok(Criterion::Complete),
            "average" | "al" => Ok(Criterion::Average),
            "hcc" => Ok(Criterion::Hcc),
            other => Err(format!("unknown criterion '{other}'")),
        }
    }
}

/// Agglomerates all objects of `m` into one dendrogram.
///
/// Either matrix kind is accepted; similarities are negated first. At every
/// step the pair of active clusters with minimal dissimilarity is merged,
/// ties going to the lexicographically smallest `(min id, max id)` node pair.
/// Merge records store `left < right` and the dissimilarity at merge time
/// (for HCC the summed dissimilarity, which may be negative).
pub fn agglomerate<T: Scalar>(m: &SignedMatrix<T>, criterion: Criterion) -> Result<Dendrogram<T>> {
    let n = m.n();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let diss = m.to_dissimilarity();
    let mut dist: Vec<T> = diss.values().as_slice().to_vec();

    // Per-slot state. Slot of a merged cluster is reused by the new node.
    let mut active = vec![true; n];
    let mut node = (0..n).collect::<Vec<_>>();
    let mut size = vec![1usize; n];
    let mut nn = vec![usize::MAX; n];
    let mut nn_val = vec![T::zero(); n];

    let nearest = |dist: &[T], active: &[bool], node: &[usize], a: usize| -> Option<(usize, T)> {
        let row = &dist[a * n..(a + 1) * n];
        let mut best: Option<(usize, T)> = None;
        for b in 0..n {
            if b == a || !active[b] {
                continue;
            }
            let v = row[b];
            best = match best {
                Some((bb, bv)) if bv < v || (bv == v && node[bb] < node[b]) => Some((bb, bv)),
                _ => Some((b, v)),
            };
        }
        best
    };

    for a in 0..n {
        if let Some((b, v)) = nearest(&dist, &active, &node, a) {
            nn[a] = b;
            nn_val[a] = v;
        }
    }

    let mut merges = Vec::with_capacity(n - 1);
    for t in 0..n.saturating_sub(1) {
        // Global best pair under (value, min id, max id).
        let mut best: Option<(usize, T, usize, usize)> = None;
        for a in 0..n {
            if !active[a] {
                continue;
            }
            let (lo, hi) = ordered(node[a], node[nn[a]]);
            let v = nn_val[a];
            let better = match best {
                None => true,
                Some((_, bv, blo, bhi)) => v < bv || (v == bv && (lo, hi) < (blo, bhi)),
            };
            if better {
                best = Some((a, v, lo, hi));
            }
        }
        let (u, linkage, left, right) = best.expect("at least two active clusters");
        let v = nn[u];

        let new_size = size[u] + size[v];
        merges.push(MergeRecord {
            left,
            right,
            linkage,
            size: new_size,
        });

        // The new cluster takes slot `u`.
        active[v] = false;
        for w in 0..n {
            if !active[w] || w == u {
                continue;
            }
            let d = criterion.update(dist[u * n + w], dist[v * n + w], size[u], size[v]);
            dist[u * n + w] = d;
            dist[w * n + u] = d;
        }
        node[u] = n + t;
        size[u] = new_size;

        for w in 0..n {
            if !active[w] || w == u {
                continue;
            }
            if nn[w] == u || nn[w] == v {
                let (b, val) = nearest(&dist, &active, &node, w).expect("slot u is still active");
                nn[w] = b;
                nn_val[w] = val;
            } else {
                // Other distances from w are untouched; only the new cluster can beat nn[w].
                let d = dist[w * n + u];
                if d < nn_val[w] || (d == nn_val[w] && node[u] < node[nn[w]]) {
                    nn[w] = u;
                    nn_val[w] = d;
                }
            }
        }
        if let Some((b, val)) = nearest(&dist, &active, &node, u) {
            nn[u] = b;
            nn_val[u] = val;
        }
    }

    Ok(Dendrogram::new(n, merges)?.with_criterion(criterion))
}

#[inline]
fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Flat `k`-cluster partition obtained by dropping the last `k - 1` merges.
///
/// Clusters are labelled in ascending order of their smallest leaf id.
pub fn cut<T: Scalar>(d: &Dendrogram<T>, k: usize) -> Result<Partition> {
    let n = d.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    // Representative leaf of every node created by a kept merge.
    let mut rep: Vec<usize> = (0..d.node_count()).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (t, m) in d.merges().iter().take(n - k).enumerate() {
        let a = find(&mut parent, rep[m.left]);
        let b = find(&mut parent, rep[m.right]);
        let (lo, hi) = ordered(a, b);
        parent[hi] = lo;
        rep[n + t] = lo;
    }
    let mut label_of_root = vec![usize::MAX; n];
    let mut next = 0;
    let labels = (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            label_of_root[r]
        })
        .collect();
    Ok(Partition::new(labels))
}

/// Adds `alpha` to every off-diagonal entry.
pub fn shift<T: Scalar>(m: &SignedMatrix<T>, alpha: T) -> Result<SignedMatrix<T>> {
    m.shift(alpha)
}
