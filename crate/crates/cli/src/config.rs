//! Experiment configuration: flat `key = value` lines, lists comma-separated,
//! `#` starts a comment.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use hcc_core::{Criterion, Measure};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub etas: Vec<f64>,
    pub repetitions: usize,
    pub seed: u64,
    pub criteria: Vec<Criterion>,
    pub measures: Vec<Measure>,
    pub out: PathBuf,
}

fn list<T: FromStr>(value: &str, key: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow!("{key}: {e}")))
        .collect()
}

fn scalar<T: FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| anyhow!("{key}: invalid value '{}'", value.trim()))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut k = None;
        let mut etas = None;
        let mut repetitions = 20;
        let mut seed = 0;
        let mut criteria = Criterion::ALL.to_vec();
        let mut measures = Measure::ALL.to_vec();
        let mut out = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", idx + 1))?;
            let key = key.trim().to_ascii_lowercase();
            let ctx = || format!("line {}", idx + 1);
            match key.as_str() {
                "n" => n = Some(scalar(value, "n").with_context(ctx)?),
                "k" => k = Some(scalar(value, "k").with_context(ctx)?),
                "eta" => etas = Some(list(value, "eta").with_context(ctx)?),
                "reps" | "repetitions" => repetitions = scalar(value, "reps").with_context(ctx)?,
                "seed" => seed = scalar(value, "seed").with_context(ctx)?,
                "criteria" => criteria = list(value, "criteria").with_context(ctx)?,
                "measures" => measures = list(value, "measures").with_context(ctx)?,
                "out" => out = Some(PathBuf::from(value.trim())),
                other => bail!("line {}: unknown key '{other}'", idx + 1),
            }
        }
        let cfg = ExperimentConfig {
            n: n.ok_or_else(|| anyhow!("missing key 'n'"))?,
            k: k.ok_or_else(|| anyhow!("missing key 'k'"))?,
            etas: etas.ok_or_else(|| anyhow!("missing key 'eta'"))?,
            repetitions,
            seed,
            criteria,
            measures,
            out: out.ok_or_else(|| anyhow!("missing key 'out'"))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            bail!("n must be at least 1");
        }
        if self.k == 0 || self.k > self.n {
            bail!("k must lie in 1..={}, got {}", self.n, self.k);
        }
        if self.etas.is_empty() {
            bail!("eta list is empty");
        }
        if let Some(e) = self.etas.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            bail!("eta {e} outside [0, 1]");
        }
        if self.repetitions == 0 {
            bail!("reps must be at least 1");
        }
        if self.criteria.is_empty() {
            bail!("criteria list is empty");
        }
        if self.measures.is_empty() {
            bail!("measures list is empty");
        }
        Ok(())
    }

    /// Where the aggregate rows go: `results.csv` becomes `results.summary.csv`.
    pub fn summary_path(&self) -> PathBuf {
        summary_path(&self.out)
    }
}

pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.summary.{}", ext.to_string_lossy()),
        None => format!("{stem}.summary"),
    };
    out.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "n = 30\nk = 3\neta = 0, 0.1 # two levels\nout = r.csv\n";

    #[test]
    fn defaults_and_lists() {
        let c = ExperimentConfig::parse(BASE).unwrap();
        assert_eq!(c.etas, vec![0.0, 0.1]);
        assert_eq!(c.repetitions, 20);
        assert_eq!(c.criteria, Criterion::ALL.to_vec());
        assert_eq!(c.summary_path(), PathBuf::from("r.summary.csv"));
    }

    #[test]
    fn validation_errors() {
        for bad in [
            "n = 30\nk = 3\neta =\nout = r.csv\n",
            "n = 30\nk = 3\neta = 1.5\nout = r.csv\n",
            "n = 30\nk = 3\neta = 0\nreps = 0\nout = r.csv\n",
            "n = 30\nk = 31\neta = 0\nout = r.csv\n",
            "n = 30\nk = 3\neta = 0\nout = r.csv\ncolour = red\n",
            "n = 30\nk = 3\neta = 0\nout = r.csv\ncriteria = ward\n",
            "n = 30\nk = 3\neta = 0\n",
        ] {
            assert!(ExperimentConfig::parse(bad).is_err(), "{bad:?}");
        }
    }
}
