//! Noise sweep over planted partitions.

use std::fmt::Write as _;

use anyhow::Result;
use hcc_core::{agglomerate, cut, noisy_similarities, planted_labels, Criterion, Measure, NoiseConfig};
use rayon::prelude::*;

use crate::config::ExperimentConfig;

/// Offset between the label seed and the noise seed of one repetition.
const NOISE_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Noise seed paired with a label seed.
pub fn noise_seed(label_seed: u64) -> u64 {
    label_seed.wrapping_add(NOISE_SEED_OFFSET)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub criterion: Criterion,
    pub eta: f64,
    pub repetition: usize,
    pub measure: Measure,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub criterion: Criterion,
    pub eta: f64,
    pub measure: Measure,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single repetition.
    pub stddev: f64,
}

/// Scores of every criterion and measure on one (eta, repetition) cell.
/// Labels use `seed + repetition`, shared across etas; noise uses a fixed offset from it.
fn run_cell(cfg: &ExperimentConfig, eta: f64, repetition: usize) -> Result<Vec<(Criterion, Measure, f64)>> {
    let rep_seed = cfg.seed.wrapping_add(repetition as u64);
    let truth = planted_labels(cfg.n, cfg.k, rep_seed)?;
    let noise = NoiseConfig::new(eta, noise_seed(rep_seed))?;
    let s = noisy_similarities::<f64>(&truth, &noise);
    let mut out = Vec::with_capacity(cfg.criteria.len() * cfg.measures.len());
    for &c in &cfg.criteria {
        let pred = cut(&agglomerate(&s, c)?, cfg.k)?;
        for &m in &cfg.measures {
            out.push((c, m, m.score(&truth, &pred)?));
        }
    }
    Ok(out)
}

/// Every run, in (criterion, eta, repetition, measure) order of the config lists.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRow>> {
    cfg.validate()?;
    let cells: Vec<(usize, usize)> = (0..cfg.etas.len())
        .flat_map(|e| (0..cfg.repetitions).map(move |r| (e, r)))
        .collect();
    let results: Vec<Vec<(Criterion, Measure, f64)>> = cells
        .par_iter()
        .map(|&(e, r)| run_cell(cfg, cfg.etas[e], r))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(results.len() * cfg.criteria.len() * cfg.measures.len());
    for (ci, &criterion) in cfg.criteria.iter().enumerate() {
        for (cell, &(e, r)) in cells.iter().enumerate() {
            let base = ci * cfg.measures.len();
            for &(_, measure, value) in &results[cell][base..base + cfg.measures.len()] {
                rows.push(RunRow {
                    criterion,
                    eta: cfg.etas[e],
                    repetition: r,
                    measure,
                    value,
                });
            }
        }
    }
    Ok(rows)
}

/// Mean and sample standard deviation per (criterion, eta, measure), in first-seen order.
pub fn summarize(rows: &[RunRow]) -> Vec<SummaryRow> {
    let mut groups: Vec<((Criterion, u64, Measure), Vec<f64>)> = Vec::new();
    for row in rows {
        let key = (row.criterion, row.eta.to_bits(), row.measure);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(row.value),
            None => groups.push((key, vec![row.value])),
        }
    }
    groups
        .into_iter()
        .map(|((criterion, eta, measure), v)| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let stddev = if v.len() > 1 {
                (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            } else {
                0.0
            };
            SummaryRow {
                criterion,
                eta: f64::from_bits(eta),
                measure,
                mean,
                stddev,
            }
        })
        .collect()
}

pub fn runs_csv(rows: &[RunRow]) -> String {
    let mut s = String::from("criterion,eta,repetition,measure,value\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{}",
            r.criterion, r.eta, r.repetition, r.measure, r.value
        )
        .unwrap();
    }
    s
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from("criterion,eta,measure,mean,stddev\n");
    for r in rows {
        writeln!(s, "{},{},{},{},{}", r.criterion, r.eta, r.measure, r.mean, r.stddev).unwrap();
    }
    s
}
