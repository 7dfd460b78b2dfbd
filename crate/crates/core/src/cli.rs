//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Every invocation prints its resolved configuration as one JSON line on
//! stderr. Failures print `{"error": code, "message": ...}` on stderr and
//! exit with status 1.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autodiff::GradCheckOptions;
use crate::error::{Error, Result};
use crate::graph::{import_raw, load_canonical, save_canonical, ImportOptions, SplitSet};
use crate::io::{read_json, write_atomic};
use crate::models::{check_gradients, Arch, ChannelMode, ModelSpec, ParamSet, TransformMode};
use crate::ops::{build_operator, eigengap_check, eigengap_sweep, OperatorKind};
use crate::smoothness::{smoothness_report, FeatureMode};
use crate::trainer::{
    embeddings, params_file, preset, run_experiment, write_embeddings_tsv, write_experiment, EmbeddingChannel,
    ModelEntry, OutputEncoding, RunManifest, TrainConfig,
};

pub const DATA_DIR_ENV: &str = "GRAPHFB_DATA_DIR";

#[derive(Debug, Parser, Serialize)]
#[command(name = "graphfb", version, about = "Two-channel filterbank GNNs and graph smoothness tools")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for multi-split training.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Precision::F64)]
    pub precision: Precision,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    F64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Convert raw node/edge files into a canonical dataset directory.
    Import(ImportArgs),
    /// Generate random train/val/test splits.
    Splits(SplitsArgs),
    /// Feature and label S-values for one operator.
    Smoothness(SmoothnessArgs),
    /// Train one model on every split of a split file.
    Train(TrainArgs),
    /// Run a multi-model experiment described by a JSON config.
    Benchmark(BenchmarkArgs),
    /// Compare λ₂/λ₁ of the lazy and renormalized random walks.
    Eigengap(EigengapArgs),
    /// Check model gradients against finite differences.
    GradCheck(GradCheckArgs),
    /// Write an operator as a Matrix Market file.
    ExportOperator(ExportOperatorArgs),
    /// Write a hidden representation of a trained model as TSV.
    ExportEmbeddings(ExportEmbeddingsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ImportArgs {
    #[arg(long)]
    pub nodes: PathBuf,
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub row_normalize: bool,
    /// Number of classes, when larger than the largest label + 1.
    #[arg(long)]
    pub n_classes: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct SplitsArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "0.48,0.32,0.20")]
    pub ratios: String,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SmoothnessArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "L_sym")]
    pub operator: OperatorKind,
    #[arg(long, default_value = "raw")]
    pub feature_mode: FeatureMode,
}

#[derive(Debug, Args, Serialize)]
pub struct TrainArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub model: Arch,
    #[arg(long)]
    pub splits: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Take lr, weight decay, dropout and width from the reference hyperparameter search
    /// for this dataset name; explicit flags still win.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long)]
    pub weight_decay: Option<f64>,
    #[arg(long)]
    pub dropout: Option<f64>,
    #[arg(long)]
    pub hidden: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub layers: usize,
    #[arg(long, default_value_t = 500)]
    pub max_epochs: usize,
    #[arg(long, default_value_t = 100)]
    pub patience: usize,
    #[arg(long)]
    pub lp_operator: Option<OperatorKind>,
    #[arg(long)]
    pub hp_operator: Option<OperatorKind>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value = "two_channel")]
    pub channels: ChannelMode,
    #[arg(long, default_value = "nonlinear")]
    pub transform: TransformMode,
    /// Train only this split index.
    #[arg(long)]
    pub split: Option<usize>,
    #[arg(long, default_value = "argmax")]
    pub output_encoding: OutputEncoding,
}

#[derive(Debug, Args, Serialize)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct EigengapArgs {
    #[arg(long, conflicts_with = "random")]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Random sweep, configured by `n=30 trials=200 gammas=0.5,1,2`.
    #[arg(long, num_args = 0..)]
    pub random: Option<Vec<String>>,
}

#[derive(Debug, Args, Serialize)]
pub struct GradCheckArgs {
    #[arg(long)]
    pub model: Arch,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub f: usize,
    #[arg(long, default_value_t = 3)]
    pub classes: usize,
    #[arg(long, default_value_t = 8)]
    pub hidden: usize,
    /// Number of random graphs.
    #[arg(long, default_value_t = 1)]
    pub graphs: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ExportOperatorArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub operator: OperatorKind,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ExportEmbeddingsArgs {
    #[arg(long)]
    pub run: PathBuf,
    #[arg(long)]
    pub layer: usize,
    #[arg(long)]
    pub channel: EmbeddingChannel,
    /// Model name inside the run; defaults to the only or first model.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub split: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Multi-model experiment description read by `benchmark`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ExperimentConfig {
    pub data: PathBuf,
    /// Split file; generated from `split_count`/`split_seed` when absent.
    #[serde(default)]
    pub splits: Option<PathBuf>,
    #[serde(default = "default_split_count")]
    pub split_count: usize,
    #[serde(default)]
    pub split_seed: u64,
    pub models: Vec<ModelEntry>,
    #[serde(default)]
    pub train: TrainConfig,
    #[serde(default)]
    pub baseline: Option<String>,
}

fn default_split_count() -> usize {
    10
}

/// Resolves a dataset argument: an existing path is used as is, otherwise it
/// is looked up under `$GRAPHFB_DATA_DIR`.
pub fn resolve_data(p: &Path) -> PathBuf {
    if p.exists() {
        return p.to_path_buf();
    }
    match std::env::var_os(DATA_DIR_ENV) {
        Some(root) => Path::new(&root).join(p),
        None => p.to_path_buf(),
    }
}

fn error_line(e: &Error) -> String {
    serde_json::json!({ "error": e.code(), "message": e.to_string() }).to_string()
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let _ = writeln!(err, "{}", serde_json::json!({ "error": "usage", "message": first }));
            return 1;
        }
    };
    if let Ok(cfg) = serde_json::to_string(&cli) {
        let _ = writeln!(err, "{cfg}");
    }
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", error_line(&e));
            1
        }
    }
}

fn println(out: &mut dyn Write, s: &str) -> Result<()> {
    writeln!(out, "{s}").map_err(|e| Error::io(Path::new("<stdout>"), e))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Import(a) => {
            let opts = ImportOptions { row_normalize: a.row_normalize, n_classes: a.n_classes };
            let (g, cleanup) = import_raw(&a.nodes, &a.edges, &opts)?;
            save_canonical(&g, &a.out)?;
            let summary = serde_json::json!({
                "n_nodes": g.n_nodes(),
                "n_edges": g.n_edges(),
                "n_features": g.n_features(),
                "n_classes": g.n_classes(),
                "cleanup": cleanup,
                "out": a.out,
            });
            println(out, &serde_json::to_string_pretty(&summary)?)
        }
        Command::Splits(a) => {
            let ratios = parse_ratios(&a.ratios)?;
            let g = load_canonical(&resolve_data(&a.data))?;
            let set = SplitSet::generate(g.n_nodes(), ratios, cli.seed, a.count)?;
            set.save(&a.out)?;
            let s = &set.splits[0];
            println(
                out,
                &serde_json::json!({
                    "count": a.count,
                    "sizes": [s.train.len(), s.val.len(), s.test.len()],
                    "out": a.out,
                })
                .to_string(),
            )
        }
        Command::Smoothness(a) => {
            let g = load_canonical(&resolve_data(&a.data))?;
            let r = smoothness_report(&g, a.operator, a.feature_mode)?;
            println(out, &serde_json::to_string_pretty(&r)?)
        }
        Command::Train(a) => cmd_train(cli, a, out),
        Command::Benchmark(a) => {
            let cfg: ExperimentConfig = read_json(&a.config)?;
            let data = resolve_data(&cfg.data);
            let g = load_canonical(&data)?;
            let splits = match &cfg.splits {
                Some(p) => SplitSet::load(p)?,
                None => SplitSet::generate(g.n_nodes(), crate::graph::DEFAULT_RATIOS, cfg.split_seed, cfg.split_count)?,
            };
            let exp = run_experiment(&g, &cfg.models, &cfg.train, &splits, cfg.baseline.as_deref(), cli.threads)?;
            write_experiment(&a.out, &data, &exp)?;
            println(out, &serde_json::to_string_pretty(&exp.report)?)
        }
        Command::Eigengap(a) => cmd_eigengap(cli, a, out),
        Command::GradCheck(a) => {
            let spec = ModelSpec::new(a.model, a.hidden);
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut worst = 0.0f64;
            let mut checked = 0;
            for k in 0..a.graphs.max(1) {
                let g = crate::synth::random_attributed(a.n, a.f, a.classes, &mut rng);
                let opts = GradCheckOptions { seed: cli.seed.wrapping_add(k as u64), ..GradCheckOptions::default() };
                let r = check_gradients(&g, &spec, cli.seed.wrapping_add(k as u64), opts)?;
                worst = worst.max(r.max_rel_err);
                checked += r.checked;
            }
            let pass = checked > 0 && worst < a.tol;
            println(out, &format!("model: {}  graphs: {}  entries: {checked}", a.model, a.graphs.max(1)))?;
            println(out, &format!("max_rel_err = {worst:.3e}"))?;
            println(out, &format!("max_rel_err < {:e}: {}", a.tol, if pass { "PASS" } else { "FAIL" }))?;
            if pass {
                Ok(())
            } else {
                Err(Error::NonFiniteGradient(format!("gradient check failed: max_rel_err {worst:e}")))
            }
        }
        Command::ExportOperator(a) => {
            let g = load_canonical(&resolve_data(&a.data))?;
            let op = build_operator(&g, a.operator, a.gamma)?;
            write_atomic(&a.out, op.matrix().to_matrix_market().as_bytes())?;
            println(
                out,
                &serde_json::json!({ "operator": op.label(), "n": op.n(), "nnz": op.matrix().nnz(), "out": a.out })
                    .to_string(),
            )
        }
        Command::ExportEmbeddings(a) => {
            let manifest: RunManifest = read_json(&a.run.join("run.json"))?;
            let model = match &a.model {
                Some(m) => m.clone(),
                None => manifest
                    .models
                    .first()
                    .cloned()
                    .ok_or_else(|| Error::InvalidEmbedding("run has no models".into()))?,
            };
            if a.split >= manifest.n_splits {
                return Err(Error::InvalidEmbedding(format!("split {} not in run ({} splits)", a.split, manifest.n_splits)));
            }
            let params = ParamSet::load(&params_file(&a.run, &model, a.split))?;
            let g = load_canonical(&manifest.data)?;
            let emb = embeddings(&g, &params, a.layer, a.channel)?;
            let channel = serde_json::to_value(a.channel)?;
            let path = a.out.clone().unwrap_or_else(|| {
                a.run.join(format!("embeddings_{model}_{}_l{}_{}.tsv", a.split, a.layer, channel.as_str().unwrap_or("x")))
            });
            write_embeddings_tsv(&path, &emb, g.labels())?;
            println(
                out,
                &serde_json::json!({ "rows": emb.rows(), "cols": emb.cols(), "out": path }).to_string(),
            )
        }
    }
}

fn parse_ratios(s: &str) -> Result<[f64; 3]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad ratio '{p}'"))))
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| Error::InvalidArgument(format!("expected 3 ratios, got {}", v.len())))
}

fn cmd_train(cli: &Cli, a: &TrainArgs, out: &mut dyn Write) -> Result<()> {
    let data = resolve_data(&a.data);
    let g = load_canonical(&data)?;
    let mut splits = SplitSet::load(&a.splits)?;
    if let Some(k) = a.split {
        if k >= splits.splits.len() {
            return Err(Error::InvalidSplit(format!("split {k} not in file ({} splits)", splits.splits.len())));
        }
        splits.splits = vec![splits.splits[k].clone()];
    }
    let p = match &a.preset {
        Some(d) => Some(
            preset(d, a.model).ok_or_else(|| Error::InvalidArgument(format!("no preset for {d}/{}", a.model)))?,
        ),
        None => None,
    };
    let mut spec = ModelSpec::new(a.model, a.hidden.or(p.map(|p| p.hidden)).unwrap_or(32))
        .with_dropout(a.dropout.or(p.map(|p| p.dropout)).unwrap_or(0.5))
        .with_layers(a.layers)
        .with_channels(a.channels)
        .with_transform(a.transform);
    if let Some(lp) = a.lp_operator {
        spec.lp_kind = lp;
        spec.hp_kind = a.hp_operator.or(lp.high_pass_partner()).unwrap_or(spec.hp_kind);
    } else if let Some(hp) = a.hp_operator {
        spec.hp_kind = hp;
    }
    spec.gamma = a.gamma;
    let defaults = TrainConfig::default();
    let cfg = TrainConfig {
        lr: a.lr.or(p.map(|p| p.lr)).unwrap_or(defaults.lr),
        weight_decay: a.weight_decay.or(p.map(|p| p.weight_decay)).unwrap_or(defaults.weight_decay),
        max_epochs: a.max_epochs,
        patience: a.patience,
        seed: cli.seed,
        eval_every: 1,
    };
    if a.output_encoding != OutputEncoding::Argmax {
        log::warn!("output encoding {:?} is only applied by the library API; reports use argmax", a.output_encoding);
    }
    let entry = ModelEntry::new(a.model.name(), spec);
    let exp = run_experiment(&g, &[entry], &cfg, &splits, None, cli.threads)?;
    write_experiment(&a.out, &data, &exp)?;
    println(out, &serde_json::to_string_pretty(&exp.report)?)
}

/// `n=30 trials=200 gammas=0.5,1,2`
#[derive(Debug, Clone, PartialEq)]
pub struct SweepArgs {
    pub n: usize,
    pub trials: usize,
    pub gammas: Vec<f64>,
}

pub fn parse_sweep(tokens: &[String]) -> Result<SweepArgs> {
    let mut s = SweepArgs { n: 30, trials: 200, gammas: vec![0.5, 1.0, 2.0] };
    for t in tokens {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got '{t}'")))?;
        let bad = || Error::InvalidArgument(format!("bad value in '{t}'"));
        match k {
            "n" => s.n = v.parse().map_err(|_| bad())?,
            "trials" => s.trials = v.parse().map_err(|_| bad())?,
            "gammas" => {
                s.gammas = v.split(',').map(|g| g.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?
            }
            _ => return Err(Error::InvalidArgument(format!("unknown sweep key '{k}'"))),
        }
    }
    Ok(s)
}

fn cmd_eigengap(cli: &Cli, a: &EigengapArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(tokens) = &a.random {
        let s = parse_sweep(tokens)?;
        let sweep = eigengap_sweep(s.n, s.trials, &s.gammas, cli.seed)?;
        println(out, &format!("holds: {}/{}", sweep.holds, sweep.checks))?;
        println(out, &format!("min margin: {:.3e}", sweep.min_margin))?;
        for f in &sweep.failures {
            println(out, &format!("failure: {}", serde_json::to_string(f)?))?;
        }
        return Ok(());
    }
    let data = a
        .data
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("eigengap needs --data or --random".into()))?;
    let g = load_canonical(&resolve_data(data))?;
    let r = eigengap_check(&g, a.gamma)?;
    println(out, &serde_json::to_string_pretty(&r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("graphfb").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sweep_tokens() {
        let t: Vec<String> = ["n=12", "trials=5", "gammas=0.5,2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_sweep(&t).unwrap(), SweepArgs { n: 12, trials: 5, gammas: vec![0.5, 2.0] });
        assert!(parse_sweep(&["x=1".to_string()]).is_err());
    }

    #[test]
    fn unknown_flag_is_a_json_error() {
        let (code, _, err) = run_str(&["smoothness", "--bogus"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "usage");
    }

    #[test]
    fn small_random_eigengap_sweep() {
        let (code, out, err) = run_str(&["eigengap", "--random", "n=8", "trials=5", "gammas=1"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("holds: 5/5"), "{out}");
        let cfg: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
        assert_eq!(cfg["command"]["command"], "eigengap");
    }

    #[test]
    fn ratios_parse() {
        assert_eq!(parse_ratios("0.48,0.32,0.20").unwrap(), [0.48, 0.32, 0.20]);
        assert!(parse_ratios("0.5,0.5").is_err());
    }
}
