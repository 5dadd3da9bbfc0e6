//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use hcc_core::{Criterion, Dendrogram, LevelKind, Matrix, MatrixKind, MergeRecord, SignedMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric matrix with off-diagonal entries uniform in `[lo, hi)`.
pub fn random_matrix(n: usize, kind: MatrixKind, lo: f64, hi: f64, seed: u64) -> SignedMatrix<f64> {
    let mut r = rng(seed);
    SignedMatrix::from_upper(n, kind, |_, _| r.gen_range(lo..hi))
}

pub fn random_signed(n: usize, seed: u64) -> SignedMatrix<f64> {
    random_matrix(n, MatrixKind::Dissimilarity, -1.0, 1.0, seed)
}

/// Agglomeration that recomputes every inter-cluster dissimilarity from the
/// raw matrix at every step. `O(n^4)`; for small inputs only.
pub fn naive_agglomerate(m: &SignedMatrix<f64>, criterion: Criterion) -> Vec<(usize, usize, f64)> {
    let d = m.to_dissimilarity();
    let n = d.n();
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut out = Vec::new();
    for t in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let (ia, ref ma) = clusters[a];
                let (ib, ref mb) = clusters[b];
                let cross = ma.iter().flat_map(|&i| mb.iter().map(move |&j| (i, j)));
                let v = match criterion {
                    Criterion::Single => cross.map(|(i, j)| d.get(i, j)).fold(f64::INFINITY, f64::min),
                    Criterion::Complete => cross.map(|(i, j)| d.get(i, j)).fold(f64::NEG_INFINITY, f64::max),
                    Criterion::Average => cross.map(|(i, j)| d.get(i, j)).sum::<f64>() / (ma.len() * mb.len()) as f64,
                    Criterion::Hcc => cross.map(|(i, j)| d.get(i, j)).sum::<f64>(),
                };
                let (lo, hi) = (ia.min(ib), ia.max(ib));
                let better = match best {
                    None => true,
                    Some((bv, blo, bhi, _, _)) => v < bv || (v == bv && (lo, hi) < (blo, bhi)),
                };
                if better {
                    best = Some((v, lo, hi, a, b));
                }
            }
        }
        let (v, lo, hi, a, b) = best.unwrap();
        out.push((lo, hi, v));
        let (_, mb) = clusters.remove(b);
        let (_, mut ma) = clusters.remove(a);
        ma.extend(mb);
        clusters.push((n + t, ma));
    }
    out
}

/// Every merge sequence over `n` leaves (every ranked binary tree), with
/// linkage `t + 1` at merge `t`.
pub fn all_dendrograms(n: usize) -> Vec<Dendrogram<f64>> {
    fn rec(
        n: usize,
        active: &mut [usize],
        sizes: &mut Vec<usize>,
        merges: &mut Vec<MergeRecord<f64>>,
        out: &mut Vec<Dendrogram<f64>>,
    ) {
        if active.len() <= 1 {
            out.push(Dendrogram::new(n, merges.clone()).unwrap());
            return;
        }
        let id = n + merges.len();
        for a in 0..active.len() {
            for b in a + 1..active.len() {
                let (x, y) = (active[a], active[b]);
                let size = sizes[x] + sizes[y];
                let mut next: Vec<usize> = active.iter().copied().filter(|&v| v != x && v != y).collect();
                next.push(id);
                sizes.push(size);
                merges.push(MergeRecord {
                    left: x,
                    right: y,
                    linkage: (merges.len() + 1) as f64,
                    size,
                });
                rec(n, &mut next, sizes, merges, out);
                merges.pop();
                sizes.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sizes = vec![1; n];
    rec(n, &mut active, &mut sizes, &mut Vec::new(), &mut out);
    out
}

/// Dendrogram distances by explicit minimisation over all sub-dendrograms:
/// each node roots one, whose value is the maximum level over its nodes.
pub fn subdendrogram_distances(d: &Dendrogram<f64>, kind: LevelKind) -> Matrix<f64> {
    let n = d.n();
    let f: Vec<f64> = (0..d.node_count())
        .map(|v| hcc_core::level_of(d, v, kind).unwrap())
        .collect();
    let mut subtree_nodes: Vec<Vec<usize>> = (0..d.node_count()).map(|v| vec![v]).collect();
    for (t, m) in d.merges().iter().enumerate() {
        let mut all = subtree_nodes[m.left].clone();
        all.extend(subtree_nodes[m.right].iter().copied());
        all.push(n + t);
        subtree_nodes[n + t] = all;
    }
    Matrix::from_fn(n, |i, j| {
        subtree_nodes
            .iter()
            .filter(|nodes| nodes.contains(&i) && nodes.contains(&j))
            .map(|nodes| nodes.iter().map(|&v| f[v]).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    })
}

pub fn merge_pairs(d: &Dendrogram<f64>) -> Vec<(usize, usize)> {
    d.merges().iter().map(|m| (m.left, m.right)).collect()
}
