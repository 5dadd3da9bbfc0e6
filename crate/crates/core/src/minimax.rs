//! Minimax path distances and correlation clustering on minimax similarities.
//!
//! The minimax distance between two objects is the smallest achievable
//! largest edge over all paths joining them. It equals the largest edge on
//! the path between them in any minimum spanning tree, so one dense Prim pass
//! plus a walk from every root gives the whole matrix in `O(n^2)`.
//!
//! On minimax similarities the positive relation is transitive, which makes
//! correlation clustering exact and cheap: the optimum is the connected
//! components of the strictly-positive graph, and the pivot algorithm finds
//! it for every seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dendrogram::Partition;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixKind, SignedMatrix};
use crate::scalar::Scalar;

/// Largest `n` accepted by the enumeration oracles.
pub const ENUMERATION_LIMIT: usize = 10;

/// Edge order used for the spanning tree: weight, then smaller endpoint,
/// then larger endpoint. A strict total order, so the tree is unique.
#[inline]
fn edge_less<T: Scalar>(a: (T, usize, usize), b: (T, usize, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && (a.1, a.2) < (b.1, b.2))
}

#[inline]
fn edge_key<T>(w: T, a: usize, b: usize) -> (T, usize, usize) {
    if a < b {
        (w, a, b)
    } else {
        (w, b, a)
    }
}

/// Minimum spanning tree edges `(u, v, weight)` with `u < v`, in insertion order.
///
/// Dense Prim. Negative weights need no special treatment.
pub fn minimum_spanning_tree<T: Scalar>(d: &SignedMatrix<T>) -> Vec<(usize, usize, T)> {
    let n = d.n();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<(T, usize, usize)>> = vec![None; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for (v, slot) in best.iter_mut().enumerate().skip(1) {
        *slot = Some(edge_key(d.get(0, v), 0, v));
    }
    for _ in 1..n {
        let mut pick: Option<usize> = None;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            pick = match pick {
                Some(p) if !edge_less(best[v].unwrap(), best[p].unwrap()) => Some(p),
                _ => Some(v),
            };
        }
        let x = pick.expect("graph is complete");
        let (w, a, b) = best[x].unwrap();
        in_tree[x] = true;
        edges.push((a, b, w));
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let cand = edge_key(d.get(x, v), x, v);
            if edge_less(cand, best[v].unwrap()) {
                best[v] = Some(cand);
            }
        }
    }
    edges
}

/// Pairwise minimax distances of a dissimilarity matrix.
///
/// A similarity matrix is negated first. The diagonal is zero.
pub fn minimax_distances<T: Scalar>(d: &SignedMatrix<T>) -> Matrix<T> {
    let d = d.to_dissimilarity();
    let n = d.n();
    let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for (a, b, w) in minimum_spanning_tree(&d) {
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    let mut out = Matrix::zeros(n);
    let mut stack = Vec::with_capacity(n);
    for root in 0..n {
        // Largest edge on the tree path from `root`, filled by DFS.
        stack.clear();
        stack.push((root, usize::MAX, T::neg_infinity()));
        while let Some((v, from, largest)) = stack.pop() {
            if v != root {
                out[(root, v)] = largest;
            }
            for &(u, w) in &adj[v] {
                if u != from {
                    stack.push((u, v, largest.max(w)));
                }
            }
        }
    }
    out
}

/// Minimax similarities `S^MM = -minimax(-S)`.
pub fn minimax_similarities<T: Scalar>(s: &SignedMatrix<T>) -> SignedMatrix<T> {
    let d = minimax_distances(&s.to_dissimilarity());
    SignedMatrix::from_upper(s.n(), MatrixKind::Similarity, |i, j| -d[(i, j)])
}

/// Minimax distances by enumerating every simple path. Test oracle.
pub fn minimax_bruteforce<T: Scalar>(d: &SignedMatrix<T>) -> Result<Matrix<T>> {
    let d = d.to_dissimilarity();
    let n = d.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: ENUMERATION_LIMIT,
        });
    }
    let mut out = Matrix::from_fn(n, |i, j| if i == j { T::zero() } else { T::infinity() });
    let mut visited = vec![false; n];

    fn walk<T: Scalar>(
        d: &SignedMatrix<T>,
        src: usize,
        v: usize,
        largest: T,
        visited: &mut [bool],
        out: &mut Matrix<T>,
    ) {
        for u in 0..d.n() {
            if visited[u] {
                continue;
            }
            let m = largest.max(d.get(v, u));
            if m < out[(src, u)] {
                out[(src, u)] = m;
            }
            visited[u] = true;
            walk(d, src, u, m, visited, out);
            visited[u] = false;
        }
    }

    for src in 0..n {
        visited[src] = true;
        walk(&d, src, src, T::neg_infinity(), &mut visited, &mut out);
        visited[src] = false;
    }
    Ok(out)
}

/// Unweighted graph keeping only strictly positive similarity edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryAdjacency {
    n: usize,
    edges: Vec<bool>,
}

impl BinaryAdjacency {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges[i * self.n + j]
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut e = vec![false; n * n];
        for &(i, j) in edges {
            if i != j {
                e[i * n + j] = true;
                e[j * n + i] = true;
            }
        }
        BinaryAdjacency { n, edges: e }
    }
}

/// Edge `(i, j)` iff `S_ij > 0`. Zero is not an edge.
pub fn threshold_positive<T: Scalar>(s: &SignedMatrix<T>) -> BinaryAdjacency {
    let s = s.to_similarity();
    let n = s.n();
    let edges = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            i != j && s.get(i, j) > T::zero()
        })
        .collect();
    BinaryAdjacency { n, edges }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Component labels numbered by smallest member id.
    pub fn partition(&mut self) -> Partition {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let labels = (0..n)
            .map(|i| {
                let r = self.find(i);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                label[r]
            })
            .collect();
        Partition::new(labels)
    }
}

/// Connected components, labelled in order of smallest member.
pub fn components_cc(a: &BinaryAdjacency) -> Partition {
    let mut uf = UnionFind::new(a.n());
    for (i, j) in a.edge_list() {
        uf.union(i, j);
    }
    uf.partition()
}

/// Correlation clustering on minimax similarities: components of the
/// strictly-positive graph of `s`.
pub fn minimax_cc<T: Scalar>(s: &SignedMatrix<T>) -> Partition {
    components_cc(&threshold_positive(&minimax_similarities(s)))
}

/// Pivot algorithm on a `+1/-1` similarity matrix.
///
/// Repeatedly picks a uniformly random unclustered object and clusters it
/// together with all its unclustered `+1` neighbours. Randomness comes only
/// from `seed`. Labels are returned in canonical (first occurrence) form.
pub fn pivot_cc<T: Scalar>(s: &SignedMatrix<T>, seed: u64) -> Result<Partition> {
    let s = s.to_similarity();
    let n = s.n();
    for i in 0..n {
        for j in 0..n {
            let x = s.get(i, j);
            if i != j && x != T::one() && x != -T::one() {
                return Err(Error::NotSigned {
                    i,
                    j,
                    value: x.to_f64_lossless(),
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unclustered: Vec<usize> = (0..n).collect();
    let mut labels = vec![usize::MAX; n];
    let mut cluster = 0;
    while !unclustered.is_empty() {
        let pivot = unclustered[rng.gen_range(0..unclustered.len())];
        labels[pivot] = cluster;
        unclustered.retain(|&v| {
            if v != pivot && s.get(pivot, v) == T::one() {
                labels[v] = cluster;
                false
            } else {
                v != pivot
            }
        });
        cluster += 1;
    }
    Ok(Partition::new(labels).canonical())
}

/// Correlation clustering cost of `p` on similarities `s`.
///
/// Sums over ordered pairs: within a cluster `(|S_ij| - S_ij) / 2`, across
/// clusters `(|S_ij| + S_ij) / 2`.
pub fn cc_cost<T: Scalar>(p: &Partition, s: &SignedMatrix<T>) -> Result<T> {
    let s = s.to_similarity();
    let n = s.n();
    if p.len() != n {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: n,
        });
    }
    let labels = p.labels();
    let half = T::lit(0.5);
    let mut cost = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = s.get(i, j);
            cost += if labels[i] == labels[j] {
                x.abs() - x
            } else {
                x.abs() + x
            };
        }
    }
    Ok(half * cost)
}

/// Iterator over all set partitions of `0..n` as restricted growth strings,
/// in lexicographic order.
pub struct SetPartitions {
    labels: Vec<usize>,
    max_prefix: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            labels: vec![0; n],
            max_prefix: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.labels.clone();
        // Advance: rightmost position that can still grow.
        let n = self.labels.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let cap = self.max_prefix[i - 1] + 1;
            if self.labels[i] < cap {
                self.labels[i] += 1;
                self.max_prefix[i] = self.max_prefix[i - 1].max(self.labels[i]);
                for k in i + 1..n {
                    self.labels[k] = 0;
                    self.max_prefix[k] = self.max_prefix[k - 1];
                }
                break;
            }
        }
        Some(current)
    }
}

/// Exact correlation clustering by enumerating every set partition.
///
/// Ties go to the lexicographically smallest canonical label vector.
pub fn cc_bruteforce<T: Scalar>(s: &SignedMatrix<T>) -> Result<(Partition, T)> {
    let n = s.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: ENUMERATION_LIMIT,
        });
    }
    let mut best: Option<(Partition, T)> = None;
    for labels in SetPartitions::new(n) {
        let p = Partition::new(labels);
        let c = cc_cost(&p, s)?;
        if best.as_ref().is_none_or(|(_, b)| c < *b) {
            best = Some((p, c));
        }
    }
    Ok(best.expect("at least one partition"))
}
