//! External agreement measures between a reference and an estimated partition.
//!
//! All three measures are adjusted or normalised so that identical
//! clusterings score 1 and random labelings score about 0. Entropies use the
//! natural logarithm.

use std::collections::HashMap;

use crate::dendrogram::Partition;
use crate::error::{Error, Result};

/// Joint counts of two labelings of the same objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<usize>>,
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
    n: usize,
}

impl ContingencyTable {
    /// Rows follow `t`'s clusters and columns `p`'s, both in first-occurrence order.
    pub fn new(t: &Partition, p: &Partition) -> Result<Self> {
        if t.len() != p.len() {
            return Err(Error::SizeMismatch {
                left: t.len(),
                right: p.len(),
            });
        }
        if t.is_empty() {
            return Err(Error::EmptyInput);
        }
        let index = |labels: &[usize]| {
            let mut map = HashMap::new();
            let ids: Vec<usize> = labels
                .iter()
                .map(|&l| {
                    let next = map.len();
                    *map.entry(l).or_insert(next)
                })
                .collect();
            (ids, map.len())
        };
        let (rows, r) = index(t.labels());
        let (cols, c) = index(p.labels());
        let mut counts = vec![vec![0usize; c]; r];
        for (&i, &j) in rows.iter().zip(&cols) {
            counts[i][j] += 1;
        }
        let row_sums = counts.iter().map(|row| row.iter().sum()).collect();
        let col_sums = (0..c).map(|j| counts.iter().map(|row| row[j]).sum()).collect();
        Ok(ContingencyTable {
            counts,
            row_sums,
            col_sums,
            n: t.len(),
        })
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.col_sums
    }

    pub fn total(&self) -> usize {
        self.n
    }

    /// Each row and each column has exactly one nonzero cell.
    pub fn is_bijective(&self) -> bool {
        let nonzero = self.counts.iter().flatten().filter(|&&x| x > 0).count();
        nonzero == self.row_sums.len() && nonzero == self.col_sums.len()
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.counts.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(move |(j, &x)| (i, j, x))
        })
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.n as f64;
        self.nonzero()
            .map(|(i, j, nij)| {
                let nij = nij as f64;
                let ab = self.row_sums[i] as f64 * self.col_sums[j] as f64;
                nij / n * ((n * nij) / ab).ln()
            })
            .sum()
    }

    /// Expected mutual information under the hypergeometric permutation model.
    pub fn expected_mutual_information(&self) -> f64 {
        let n = self.n;
        let nf = n as f64;
        let ln_fact = ln_factorials(n);
        let mut emi = 0.0;
        for &a in &self.row_sums {
            for &b in &self.col_sums {
                let lo = (a + b).saturating_sub(n).max(1);
                let hi = a.min(b);
                let fixed = ln_fact[a] + ln_fact[b] + ln_fact[n - a] + ln_fact[n - b] - ln_fact[n];
                let ab = a as f64 * b as f64;
                for nij in lo..=hi {
                    let x = nij as f64;
                    let ln_p = fixed - ln_fact[nij] - ln_fact[a - nij] - ln_fact[b - nij] - ln_fact[n + nij - a - b];
                    emi += x / nf * ((nf * x) / ab).ln() * ln_p.exp();
                }
            }
        }
        emi
    }
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0f64;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

fn entropy(sizes: &[usize], n: usize) -> f64 {
    let n = n as f64;
    -sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Mutual information adjusted for chance, normalised by the arithmetic mean
/// of the two entropies.
pub fn adjusted_mutual_info(t: &Partition, p: &Partition) -> Result<f64> {
    let table = ContingencyTable::new(t, p)?;
    if table.is_bijective() {
        return Ok(1.0);
    }
    let mi = table.mutual_information();
    let emi = table.expected_mutual_information();
    let h_t = entropy(table.row_sums(), table.total());
    let h_p = entropy(table.col_sums(), table.total());
    let denom = 0.5 * (h_t + h_p) - emi;
    let num = mi - emi;
    if denom == 0.0 {
        return Ok(if num == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(num / denom)
}

fn comb2(x: usize) -> f64 {
    let x = x as f64;
    x * (x - 1.0) / 2.0
}

/// Rand index adjusted for chance.
pub fn adjusted_rand(t: &Partition, p: &Partition) -> Result<f64> {
    let table = ContingencyTable::new(t, p)?;
    if table.is_bijective() {
        return Ok(1.0);
    }
    let index: f64 = table.nonzero().map(|(_, _, x)| comb2(x)).sum();
    let sum_a: f64 = table.row_sums().iter().map(|&a| comb2(a)).sum();
    let sum_b: f64 = table.col_sums().iter().map(|&b| comb2(b)).sum();
    let expected = sum_a * sum_b / comb2(table.total());
    let max_index = 0.5 * (sum_a + sum_b);
    let num = index - expected;
    let denom = max_index - expected;
    if denom == 0.0 {
        return Ok(if num == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(num / denom)
}

/// Homogeneity, completeness and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VMeasure {
    pub homogeneity: f64,
    pub completeness: f64,
    pub v: f64,
}

pub fn homogeneity_completeness_v(t: &Partition, p: &Partition) -> Result<VMeasure> {
    let table = ContingencyTable::new(t, p)?;
    if table.is_bijective() {
        return Ok(VMeasure {
            homogeneity: 1.0,
            completeness: 1.0,
            v: 1.0,
        });
    }
    let n = table.total();
    let nf = n as f64;
    let h_t = entropy(table.row_sums(), n);
    let h_p = entropy(table.col_sums(), n);
    // H(t | p), accumulated row by row so a constant `p` reproduces H(t) exactly.
    let h_t_given_p: f64 = -table
        .nonzero()
        .map(|(_, j, x)| {
            let x = x as f64;
            x / nf * (x / table.col_sums()[j] as f64).ln()
        })
        .sum::<f64>();
    let mut h_p_given_t = 0.0;
    for j in 0..table.col_sums().len() {
        for (i, row) in table.counts().iter().enumerate() {
            let x = row[j];
            if x > 0 {
                let x = x as f64;
                h_p_given_t -= x / nf * (x / table.row_sums()[i] as f64).ln();
            }
        }
    }
    let homogeneity = if h_t == 0.0 { 1.0 } else { 1.0 - h_t_given_p / h_t };
    let completeness = if h_p == 0.0 { 1.0 } else { 1.0 - h_p_given_t / h_p };
    let v = if homogeneity + completeness == 0.0 {
        0.0
    } else {
        2.0 * homogeneity * completeness / (homogeneity + completeness)
    };
    Ok(VMeasure {
        homogeneity,
        completeness,
        v,
    })
}

pub fn v_measure(t: &Partition, p: &Partition) -> Result<f64> {
    homogeneity_completeness_v(t, p).map(|m| m.v)
}

/// Named measure, as used by the experiment harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Ami,
    Ari,
    V,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Ami, Measure::Ari, Measure::V];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Ami => "ami",
            Measure::Ari => "ari",
            Measure::V => "v",
        }
    }

    pub fn score(self, t: &Partition, p: &Partition) -> Result<f64> {
        match self {
            Measure::Ami => adjusted_mutual_info(t, p),
            Measure::Ari => adjusted_rand(t, p),
            Measure::V => v_measure(t, p),
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ami" | "mi" => Ok(Measure::Ami),
            "ari" | "rand" => Ok(Measure::Ari),
            "v" | "v_measure" | "v-measure" => Ok(Measure::V),
            other => Err(format!("unknown measure '{other}'")),
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
