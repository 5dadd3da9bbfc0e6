//! Command-line front end. Each subcommand reads files, calls into
//! `hcc_core` and writes files; no numeric logic lives here.

pub mod config;
pub mod experiment;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hcc_core::io::{
    load_dendrogram, load_labels, load_matrix, save_dendrogram, save_embedding, save_labels, save_matrix,
};
use hcc_core::{
    agglomerate, cut, dendrogram_distances, embed, minimax_cc, noisy_similarities, planted_labels,
    reconstruction_error, Criterion, Dendrogram, Dims, LevelKind, MatrixKind, Measure, NoiseConfig, SignedMatrix,
};

pub use config::ExperimentConfig;

#[derive(Debug, Parser)]
#[command(name = "hcc", version, about = "Hierarchical correlation clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Similarity,
    Dissimilarity,
}

impl From<Kind> for MatrixKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Similarity => MatrixKind::Similarity,
            Kind::Dissimilarity => MatrixKind::Dissimilarity,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a dendrogram from a matrix file, optionally cut into K clusters.
    Cluster(ClusterArgs),
    /// Embed dendrogram distances as points.
    Embed(EmbedArgs),
    /// Correlation clustering on minimax similarities.
    MinimaxCc(MinimaxArgs),
    /// Score predicted labels against true labels.
    Eval(EvalArgs),
    /// Sample a planted partition and a noisy similarity matrix.
    Synth(SynthArgs),
    /// Run a noise sweep described by a config file.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    pub matrix: PathBuf,
    #[arg(long, default_value = "hcc", value_parser = parse_criterion)]
    pub criterion: Criterion,
    #[arg(long, value_enum, default_value = "similarity")]
    pub kind: Kind,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    /// Labels destination when `--k` is given; defaults to `<out>.labels`.
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    pub input: PathBuf,
    /// Treat the input as a dendrogram file instead of a matrix.
    #[arg(long)]
    pub dendrogram: bool,
    /// Criterion used to cluster a matrix input, or the one that produced a
    /// dendrogram input.
    #[arg(long, value_parser = parse_criterion)]
    pub criterion: Option<Criterion>,
    #[arg(long, value_enum, default_value = "similarity")]
    pub kind: Kind,
    #[arg(long, default_value = "level", value_parser = parse_level)]
    pub level: LevelKind,
    #[arg(long, default_value = "auto", value_parser = parse_dims)]
    pub dims: Dims,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MinimaxArgs {
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value = "similarity")]
    pub kind: Kind,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub truth: PathBuf,
    pub predicted: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_measure, default_value = "ami,ari,v")]
    pub measures: Vec<Measure>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Similarity matrix destination; labels go to `<out>.labels`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    pub config: PathBuf,
    /// Overrides the config's eta list.
    #[arg(long, value_delimiter = ',')]
    pub eta: Option<Vec<f64>>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_criterion(s: &str) -> std::result::Result<Criterion, String> {
    s.parse()
}

fn parse_level(s: &str) -> std::result::Result<LevelKind, String> {
    s.parse()
}

fn parse_dims(s: &str) -> std::result::Result<Dims, String> {
    s.parse().map_err(|e: <Dims as std::str::FromStr>::Err| e.to_string())
}

fn parse_measure(s: &str) -> std::result::Result<Measure, String> {
    s.parse()
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn load_signed(path: &Path, kind: Kind) -> Result<SignedMatrix<f64>> {
    let m = load_matrix::<f64>(path).with_context(|| format!("reading {}", path.display()))?;
    SignedMatrix::new(m, kind.into()).with_context(|| format!("validating {}", path.display()))
}

pub fn cmd_cluster(args: &ClusterArgs) -> Result<Dendrogram<f64>> {
    let m = load_signed(&args.matrix, args.kind)?;
    let d = agglomerate(&m, args.criterion)?;
    save_dendrogram(&args.out, &d)?;
    if let Some(k) = args.k {
        let p = cut(&d, k)?;
        let path = args.labels_out.clone().unwrap_or_else(|| sibling(&args.out, ".labels"));
        save_labels(&path, &p)?;
    }
    Ok(d)
}

/// Returns the reconstruction error.
pub fn cmd_embed(args: &EmbedArgs) -> Result<f64> {
    let d = if args.dendrogram {
        let d = load_dendrogram::<f64>(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
        match args.criterion {
            Some(c) => d.with_criterion(c),
            None => d,
        }
    } else {
        let m = load_signed(&args.input, args.kind)?;
        agglomerate(&m, args.criterion.unwrap_or(Criterion::Hcc))?
    };
    let u = dendrogram_distances(&d, args.level)?;
    let e = embed(&u, args.dims)?;
    let err = reconstruction_error(&e, &u)?;
    save_embedding(&args.out, &e)?;
    Ok(err)
}

pub fn cmd_minimax_cc(args: &MinimaxArgs) -> Result<hcc_core::Partition> {
    let m = load_signed(&args.matrix, args.kind)?;
    let p = minimax_cc(&m);
    save_labels(&args.out, &p)?;
    Ok(p)
}

pub fn cmd_eval(args: &EvalArgs) -> Result<Vec<(Measure, f64)>> {
    let t = load_labels(&args.truth).with_context(|| format!("reading {}", args.truth.display()))?;
    let p = load_labels(&args.predicted).with_context(|| format!("reading {}", args.predicted.display()))?;
    args.measures.iter().map(|&m| Ok((m, m.score(&t, &p)?))).collect()
}

pub fn cmd_synth(args: &SynthArgs) -> Result<()> {
    let labels = planted_labels(args.n, args.k, args.seed)?;
    let s = noisy_similarities::<f64>(&labels, &NoiseConfig::new(args.eta, experiment::noise_seed(args.seed))?);
    save_matrix(&args.out, s.values())?;
    let path = args.labels_out.clone().unwrap_or_else(|| sibling(&args.out, ".labels"));
    save_labels(&path, &labels)?;
    Ok(())
}

/// Writes the per-run CSV to the configured path and the aggregate CSV next to it.
pub fn cmd_experiment(cfg: &ExperimentConfig) -> Result<()> {
    let rows = experiment::run_experiment(cfg)?;
    let summary = experiment::summarize(&rows);
    std::fs::write(&cfg.out, experiment::runs_csv(&rows)).with_context(|| format!("writing {}", cfg.out.display()))?;
    let spath = cfg.summary_path();
    std::fs::write(&spath, experiment::summary_csv(&summary))
        .with_context(|| format!("writing {}", spath.display()))?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Cluster(a) => {
            cmd_cluster(&a)?;
        }
        Command::Embed(a) => {
            let err = cmd_embed(&a)?;
            writeln!(out, "reconstruction_error,{err:e}")?;
        }
        Command::MinimaxCc(a) => {
            cmd_minimax_cc(&a)?;
        }
        Command::Eval(a) => {
            let scores = cmd_eval(&a)?;
            writeln!(out, "measure,value")?;
            for (m, v) in scores {
                writeln!(out, "{m},{v}")?;
            }
        }
        Command::Synth(a) => cmd_synth(&a)?,
        Command::Experiment(a) => {
            let mut cfg = ExperimentConfig::load(&a.config)?;
            if let Some(e) = a.eta {
                cfg.etas = e;
            }
            if let Some(r) = a.reps {
                cfg.repetitions = r;
            }
            if let Some(s) = a.seed {
                cfg.seed = s;
            }
            if let Some(o) = a.out {
                cfg.out = o;
            }
            if let Err(e) = cfg.validate() {
                bail!("invalid experiment config: {e}");
            }
            cmd_experiment(&cfg)?;
        }
    }
    Ok(())
}
