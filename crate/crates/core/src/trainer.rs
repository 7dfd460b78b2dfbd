//! Full-batch training, early stopping on validation accuracy, multi-split
//! experiments with paired deltas, and output smoothness.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autodiff::{softmax_rows, AdamState, Tape};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, Split, SplitSet};
use crate::io::{write_atomic, write_json};
use crate::models::{forward, init_params, predict, Arch, FeatureInput, ModelOps, ModelSpec, ParamSet};
use crate::ops::{build_operator, OperatorKind, SparseOperator};
use crate::smoothness::{one_hot, Energies};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub lr: f64,
    pub weight_decay: f64,
    pub max_epochs: usize,
    pub patience: usize,
    pub seed: u64,
    pub eval_every: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { lr: 0.05, weight_decay: 5e-4, max_epochs: 500, patience: 100, seed: 0, eval_every: 1 }
    }
}

impl TrainConfig {
    /// `lr = 0` is accepted so a run can be used as a frozen-parameter probe.
    pub fn validate(&self) -> Result<()> {
        if !(self.lr >= 0.0 && self.lr.is_finite()) {
            return Err(Error::InvalidArgument(format!("lr must be finite and non-negative, got {}", self.lr)));
        }
        if !(self.weight_decay >= 0.0 && self.weight_decay.is_finite()) {
            return Err(Error::InvalidArgument(format!("invalid weight_decay {}", self.weight_decay)));
        }
        if self.max_epochs == 0 || self.eval_every == 0 {
            return Err(Error::InvalidArgument("max_epochs and eval_every must be positive".into()));
        }
        if self.patience > self.max_epochs {
            return Err(Error::InvalidArgument(format!(
                "patience {} exceeds max_epochs {}",
                self.patience, self.max_epochs
            )));
        }
        Ok(())
    }
}

/// How predictions are encoded before measuring their smoothness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputEncoding {
    /// One-hot of the predicted class.
    #[default]
    Argmax,
    Softmax,
}

impl FromStr for OutputEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "argmax" => Ok(OutputEncoding::Argmax),
            "softmax" => Ok(OutputEncoding::Softmax),
            _ => Err(Error::InvalidArgument(format!("unknown output encoding '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_loss: f64,
    pub train_acc: f64,
    pub val_acc: f64,
    pub test_acc: f64,
    /// Effective `(α_L, α_H)` per layer after this epoch's update.
    pub alphas: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainResult {
    pub test_accuracy: f64,
    pub val_accuracy: f64,
    /// 1-based epoch whose parameters were selected; 0 means the initial ones.
    pub best_epoch: usize,
    pub epochs_run: usize,
    pub alphas: Vec<(f64, f64)>,
    pub history: Vec<EpochRecord>,
    #[serde(rename = "output_S")]
    pub output_s: f64,
    #[serde(rename = "label_S")]
    pub label_s: f64,
    pub wall_time_s: f64,
    pub params: ParamSet,
}

impl TrainResult {
    pub fn smoothness_gap(&self) -> f64 {
        (self.output_s - self.label_s).abs()
    }
}

pub fn accuracy(logits: &DenseMatrix, labels: &[usize], idx: &[usize]) -> f64 {
    if idx.is_empty() {
        return 0.0;
    }
    let pred = logits.argmax_rows();
    idx.iter().filter(|&&i| pred[i] == labels[i]).count() as f64 / idx.len() as f64
}

/// S-value of the model output under `op`.
pub fn output_smoothness(op: &SparseOperator, logits: &DenseMatrix, encoding: OutputEncoding) -> Result<f64> {
    let y = match encoding {
        OutputEncoding::Argmax => one_hot(&logits.argmax_rows(), logits.cols())?,
        OutputEncoding::Softmax => softmax_rows(logits),
    };
    Energies::compute(op, &y)?.s_value()
}

/// Operators and inputs shared by every run on one graph.
pub struct TrainContext<'g> {
    pub graph: &'g Graph,
    pub features: FeatureInput,
    pub smooth_op: SparseOperator,
    pub label_s: f64,
    pub encoding: OutputEncoding,
}

impl<'g> TrainContext<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        let smooth_op = build_operator(graph, OperatorKind::HatLSym, None)?;
        let label_s = Energies::compute(&smooth_op, &one_hot(graph.labels(), graph.n_classes())?)?.s_value()?;
        Ok(TrainContext {
            graph,
            features: FeatureInput::new(graph.features()),
            smooth_op,
            label_s,
            encoding: OutputEncoding::Argmax,
        })
    }

    pub fn with_encoding(mut self, encoding: OutputEncoding) -> Self {
        self.encoding = encoding;
        self
    }
}

pub fn train(graph: &Graph, spec: &ModelSpec, cfg: &TrainConfig, split: &Split) -> Result<TrainResult> {
    train_in(&TrainContext::new(graph)?, spec, cfg, split)
}

pub fn train_in(ctx: &TrainContext<'_>, spec: &ModelSpec, cfg: &TrainConfig, split: &Split) -> Result<TrainResult> {
    cfg.validate()?;
    spec.validate()?;
    let graph = ctx.graph;
    let n = graph.n_nodes();
    for &i in split.train.iter().chain(&split.val).chain(&split.test) {
        if i >= n {
            return Err(Error::InvalidSplit(format!("index {i} out of range for {n} nodes")));
        }
    }
    if split.train.is_empty() {
        return Err(Error::InvalidSplit("empty training set".into()));
    }
    let start = Instant::now();
    let ops = ModelOps::build(graph, spec)?;
    let mut params = init_params(spec, graph.n_features(), graph.n_classes(), cfg.seed)?;
    let decay = params.decay_mask();
    let mut adam = AdamState::new(&params.tensors, cfg.lr, cfg.weight_decay);
    let mut drop_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    drop_rng.set_stream(1);
    let labels = graph.labels();

    let z0 = predict(&ops, &params, &ctx.features)?;
    let mut best = (accuracy(&z0, labels, &split.val), accuracy(&z0, labels, &split.test), 0usize);
    let mut best_params = params.clone();
    let mut history = Vec::new();
    let mut epochs_run = 0;
    for epoch in 1..=cfg.max_epochs {
        epochs_run = epoch;
        let mut tape = Tape::new();
        let out = forward(&mut tape, &ops, &params, &ctx.features, true, &mut drop_rng)?;
        let loss = tape.softmax_cross_entropy(out.logits, labels, &split.train)?;
        let loss_value = tape.value(loss)[(0, 0)];
        if !loss_value.is_finite() {
            return Err(Error::NonFiniteLoss { epoch, value: loss_value });
        }
        tape.backward(loss)?;
        let grads: Vec<DenseMatrix> = out
            .params
            .iter()
            .zip(&params.tensors)
            .map(|(&v, t)| tape.grad(v).cloned().unwrap_or_else(|| DenseMatrix::zeros(t.rows(), t.cols())))
            .collect();
        drop(tape);
        adam.step(&mut params.tensors, &grads, &decay)?;

        if epoch % cfg.eval_every != 0 && epoch != cfg.max_epochs {
            continue;
        }
        let z = predict(&ops, &params, &ctx.features)?;
        let rec = EpochRecord {
            epoch,
            train_loss: loss_value,
            train_acc: accuracy(&z, labels, &split.train),
            val_acc: accuracy(&z, labels, &split.val),
            test_acc: accuracy(&z, labels, &split.test),
            alphas: params.alphas(),
        };
        if rec.val_acc > best.0 {
            best = (rec.val_acc, rec.test_acc, epoch);
            best_params = params.clone();
        }
        history.push(rec);
        if epoch - best.2 >= cfg.patience {
            break;
        }
    }
    let z = predict(&ops, &best_params, &ctx.features)?;
    let output_s = output_smoothness(&ctx.smooth_op, &z, ctx.encoding)?;
    Ok(TrainResult {
        test_accuracy: best.1,
        val_accuracy: best.0,
        best_epoch: best.2,
        epochs_run,
        alphas: best_params.alphas(),
        history,
        output_s,
        label_s: ctx.label_s,
        wall_time_s: start.elapsed().as_secs_f64(),
        params: best_params,
    })
}

/// Which intermediate representation to export.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingChannel {
    Lp,
    Hp,
    Combined,
}

impl FromStr for EmbeddingChannel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp" => Ok(EmbeddingChannel::Lp),
            "hp" => Ok(EmbeddingChannel::Hp),
            "combined" => Ok(EmbeddingChannel::Combined),
            _ => Err(Error::InvalidEmbedding(format!("unknown channel '{s}'"))),
        }
    }
}

/// Evaluation-mode representation at 1-based `layer`. The last layer's
/// combined output is the logits.
pub fn embeddings(graph: &Graph, params: &ParamSet, layer: usize, channel: EmbeddingChannel) -> Result<DenseMatrix> {
    let spec = &params.spec;
    if layer == 0 || layer > spec.n_layers {
        return Err(Error::InvalidEmbedding(format!("layer {layer} outside 1..={}", spec.n_layers)));
    }
    let ops = ModelOps::build(graph, spec)?;
    let mut tape = Tape::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let out = forward(&mut tape, &ops, params, &FeatureInput::new(graph.features()), false, &mut rng)?;
    let lv = out.layers[layer - 1];
    let var = match channel {
        EmbeddingChannel::Combined => Some(lv.combined),
        EmbeddingChannel::Lp => lv.lp,
        EmbeddingChannel::Hp => lv.hp,
    };
    let var = var.ok_or_else(|| {
        Error::InvalidEmbedding(format!(
            "{} model ({}) has no {:?} channel",
            spec.arch,
            spec.channel_mode.name(),
            channel
        ))
    })?;
    Ok(tape.value(var).clone())
}

/// TSV with one row per node: the embedding values, then the label.
pub fn write_embeddings_tsv(path: &Path, emb: &DenseMatrix, labels: &[usize]) -> Result<()> {
    if labels.len() != emb.rows() {
        return Err(Error::DimensionMismatch(format!("{} labels for {} rows", labels.len(), emb.rows())));
    }
    let mut s = String::new();
    for (i, &y) in labels.iter().enumerate() {
        for v in emb.row(i) {
            let _ = write!(s, "{v}\t");
        }
        let _ = writeln!(s, "{y}");
    }
    write_atomic(path, s.as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelEntry {
    pub name: String,
    pub spec: ModelSpec,
    /// Per-model overrides of the shared training configuration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_decay: Option<f64>,
}

impl ModelEntry {
    pub fn new(name: impl Into<String>, spec: ModelSpec) -> Self {
        ModelEntry { name: name.into(), spec, lr: None, weight_decay: None }
    }

    pub fn with_optimizer(mut self, lr: f64, weight_decay: f64) -> Self {
        self.lr = Some(lr);
        self.weight_decay = Some(weight_decay);
        self
    }

    fn config(&self, base: &TrainConfig) -> TrainConfig {
        TrainConfig {
            lr: self.lr.unwrap_or(base.lr),
            weight_decay: self.weight_decay.unwrap_or(base.weight_decay),
            ..base.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub name: String,
    pub spec: ModelSpec,
    pub train: TrainConfig,
    pub test_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub best_epochs: Vec<usize>,
    #[serde(rename = "output_S")]
    pub output_s: Vec<f64>,
    /// Median of `|output_S − label_S|` across splits.
    pub median_smoothness_gap: f64,
    /// Mean effective `(α_L, α_H)` per layer across splits.
    pub mean_alphas: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedDelta {
    pub model: String,
    pub baseline: String,
    pub per_split: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub n_splits: usize,
    pub split_seed: u64,
    #[serde(rename = "label_S")]
    pub label_s: f64,
    pub models: Vec<ModelSummary>,
    pub deltas: Vec<PairedDelta>,
}

impl ExperimentReport {
    pub fn model(&self, name: &str) -> Option<&ModelSummary> {
        self.models.iter().find(|m| m.name == name)
    }

    pub fn delta(&self, model: &str) -> Option<&PairedDelta> {
        self.deltas.iter().find(|d| d.model == model)
    }
}

pub struct Experiment {
    pub report: ExperimentReport,
    /// `results[model][split]`
    pub results: Vec<Vec<TrainResult>>,
}

pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Seed used for split `k`; every model sees the same one, so runs are paired.
pub fn split_run_seed(base: u64, k: usize) -> u64 {
    base.wrapping_add(k as u64)
}

/// Trains every model on every split, `threads` jobs at a time. Deltas are
/// taken per split against `baseline` for every other model.
pub fn run_experiment(
    graph: &Graph,
    models: &[ModelEntry],
    cfg: &TrainConfig,
    splits: &SplitSet,
    baseline: Option<&str>,
    threads: usize,
) -> Result<Experiment> {
    if models.is_empty() {
        return Err(Error::InvalidArgument("no models to run".into()));
    }
    if splits.splits.is_empty() {
        return Err(Error::ZeroSplitCount);
    }
    splits.validate(graph.n_nodes())?;
    for m in models {
        m.spec.validate()?;
        m.config(cfg).validate()?;
    }
    if let Some(b) = baseline {
        if !models.iter().any(|m| m.name == b) {
            return Err(Error::InvalidArgument(format!("baseline '{b}' is not among the models")));
        }
    }
    let ctx = TrainContext::new(graph)?;
    let jobs: Vec<(usize, usize)> =
        (0..models.len()).flat_map(|m| (0..splits.splits.len()).map(move |s| (m, s))).collect();
    let run = |&(m, s): &(usize, usize)| -> Result<TrainResult> {
        let entry = &models[m];
        let c = TrainConfig { seed: split_run_seed(cfg.seed, s), ..entry.config(cfg) };
        let r = train_in(&ctx, &entry.spec, &c, &splits.splits[s]);
        if let Ok(r) = &r {
            log::info!("{} split {s}: test {:.4} (epoch {})", entry.name, r.test_accuracy, r.best_epoch);
        }
        r
    };
    let flat: Vec<Result<TrainResult>> = if threads <= 1 {
        jobs.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(run).collect())
    };
    let mut results: Vec<Vec<TrainResult>> = models.iter().map(|_| Vec::new()).collect();
    for ((m, _), r) in jobs.iter().zip(flat) {
        results[*m].push(r?);
    }

    let summaries: Vec<ModelSummary> = models
        .iter()
        .zip(&results)
        .map(|(entry, rs)| {
            let accs: Vec<f64> = rs.iter().map(|r| r.test_accuracy).collect();
            let (mean, std) = mean_std(&accs);
            let gaps: Vec<f64> = rs.iter().map(|r| r.smoothness_gap()).collect();
            let n_layers = rs[0].alphas.len();
            let mean_alphas = (0..n_layers)
                .map(|l| {
                    let k = rs.len() as f64;
                    (rs.iter().map(|r| r.alphas[l].0).sum::<f64>() / k, rs.iter().map(|r| r.alphas[l].1).sum::<f64>() / k)
                })
                .collect();
            ModelSummary {
                name: entry.name.clone(),
                spec: entry.spec.clone(),
                train: entry.config(cfg),
                test_accuracies: accs,
                mean_accuracy: mean,
                std_accuracy: std,
                best_epochs: rs.iter().map(|r| r.best_epoch).collect(),
                output_s: rs.iter().map(|r| r.output_s).collect(),
                median_smoothness_gap: median(&gaps),
                mean_alphas,
            }
        })
        .collect();
    let mut deltas = Vec::new();
    if let Some(b) = baseline {
        let base = summaries.iter().find(|s| s.name == b).expect("checked above");
        for s in summaries.iter().filter(|s| s.name != b) {
            let per_split: Vec<f64> =
                s.test_accuracies.iter().zip(&base.test_accuracies).map(|(a, c)| a - c).collect();
            let (mean, std) = mean_std(&per_split);
            deltas.push(PairedDelta { model: s.name.clone(), baseline: b.to_string(), per_split, mean, std });
        }
    }
    Ok(Experiment {
        report: ExperimentReport {
            n_splits: splits.splits.len(),
            split_seed: splits.seed,
            label_s: ctx.label_s,
            models: summaries,
            deltas,
        },
        results,
    })
}

fn history_csv(r: &TrainResult) -> String {
    let mut s = String::from("epoch,train_loss,train_acc,val_acc,test_acc\n");
    for h in &r.history {
        let _ = writeln!(s, "{},{},{},{},{}", h.epoch, h.train_loss, h.train_acc, h.val_acc, h.test_acc);
    }
    s
}

fn alphas_csv(r: &TrainResult) -> String {
    let n_layers = r.history.first().map_or(0, |h| h.alphas.len());
    let mut s = String::from("epoch");
    for l in 1..=n_layers {
        let _ = write!(s, ",alpha_L{l},alpha_H{l}");
    }
    s.push('\n');
    for h in &r.history {
        let _ = write!(s, "{}", h.epoch);
        for (a, b) in &h.alphas {
            let _ = write!(s, ",{a},{b}");
        }
        s.push('\n');
    }
    s
}

/// Run directory metadata, enough to rebuild the model for export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub data: PathBuf,
    pub models: Vec<String>,
    pub n_splits: usize,
}

pub fn params_file(dir: &Path, model: &str, split: usize) -> PathBuf {
    dir.join(format!("params_{model}_{split}.json"))
}

/// Writes `report.json`, `run.json`, and per model and split the history,
/// α trajectory and selected parameters.
pub fn write_experiment(dir: &Path, data: &Path, exp: &Experiment) -> Result<()> {
    write_json(&dir.join("report.json"), &exp.report)?;
    for (summary, rs) in exp.report.models.iter().zip(&exp.results) {
        for (k, r) in rs.iter().enumerate() {
            let name = &summary.name;
            write_atomic(&dir.join(format!("history_{name}_{k}.csv")), history_csv(r).as_bytes())?;
            if summary.spec.arch.is_filterbank() {
                write_atomic(&dir.join(format!("alphas_{name}_{k}.csv")), alphas_csv(r).as_bytes())?;
            }
            r.params.save(&params_file(dir, name, k))?;
        }
    }
    let manifest = RunManifest {
        data: data.to_path_buf(),
        models: exp.report.models.iter().map(|m| m.name.clone()).collect(),
        n_splits: exp.report.n_splits,
    };
    write_json(&dir.join("run.json"), &manifest)
}

/// Reference hyperparameters, keyed by dataset and model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub lr: f64,
    pub weight_decay: f64,
    pub dropout: f64,
    pub hidden: usize,
}

pub const DATASETS: [&str; 9] =
    ["cornell", "wisconsin", "texas", "actor", "chameleon", "squirrel", "cora", "citeseer", "pubmed"];

pub fn preset(dataset: &str, arch: Arch) -> Option<Preset> {
    let d = dataset.to_ascii_lowercase();
    let d = if d == "film" { "actor".to_string() } else { d };
    let (lr, wd, p) = match (d.as_str(), arch) {
        ("cornell", Arch::Gcn) => (0.05, 5e-4, 0.4),
        ("wisconsin", Arch::Gcn) => (0.05, 5e-4, 0.3),
        ("texas", Arch::Gcn) => (0.05, 5e-5, 0.4),
        ("actor", Arch::Gcn) => (0.05, 5e-4, 0.3),
        ("chameleon", Arch::Gcn) => (0.05, 5e-5, 0.3),
        ("squirrel", Arch::Gcn) => (0.05, 5e-5, 0.6),
        ("cora", Arch::Gcn) => (0.05, 5e-5, 0.9),
        ("citeseer", Arch::Gcn) => (0.05, 5e-4, 0.5),
        ("pubmed", Arch::Gcn) => (0.05, 5e-5, 0.2),
        ("cornell", Arch::Mlp) => (0.05, 1e-4, 0.5),
        ("wisconsin", Arch::Mlp) => (0.05, 1e-4, 0.4),
        ("texas", Arch::Mlp) => (0.05, 5e-4, 0.3),
        ("actor", Arch::Mlp) => (0.05, 5e-5, 0.9),
        ("chameleon", Arch::Mlp) => (0.05, 5e-5, 0.3),
        ("squirrel", Arch::Mlp) => (0.05, 5e-5, 0.4),
        ("cora", Arch::Mlp) => (0.05, 5e-4, 0.4),
        ("citeseer", Arch::Mlp) => (0.05, 5e-5, 0.6),
        ("pubmed", Arch::Mlp) => (0.05, 1e-4, 0.1),
        ("cornell", Arch::FbGcn) => (0.05, 1e-3, 0.3),
        ("wisconsin", Arch::FbGcn) => (0.05, 5e-4, 0.1),
        ("texas", Arch::FbGcn) => (0.05, 5e-4, 0.1),
        ("actor", Arch::FbGcn) => (0.05, 5e-3, 0.2),
        ("chameleon", Arch::FbGcn) => (0.05, 5e-5, 0.7),
        ("squirrel", Arch::FbGcn) => (0.05, 5e-5, 0.6),
        ("cora", Arch::FbGcn) => (0.05, 5e-4, 0.8),
        ("citeseer", Arch::FbGcn) => (0.05, 5e-3, 0.3),
        ("pubmed", Arch::FbGcn) => (0.05, 5e-4, 0.3),
        ("cornell", Arch::FbSage) => (0.05, 5e-4, 0.1),
        ("wisconsin", Arch::FbSage) => (0.05, 5e-4, 0.2),
        ("texas", Arch::FbSage) => (0.1, 5e-4, 0.2),
        ("actor", Arch::FbSage) => (0.05, 5e-4, 0.1),
        ("chameleon", Arch::FbSage) => (0.05, 5e-4, 0.6),
        ("squirrel", Arch::FbSage) => (0.05, 5e-4, 0.5),
        ("cora", Arch::FbSage) => (0.05, 5e-5, 0.7),
        ("citeseer", Arch::FbSage) => (0.05, 5e-5, 0.7),
        ("pubmed", Arch::FbSage) => (0.05, 5e-5, 0.3),
        _ => return None,
    };
    Some(Preset { lr, weight_decay: wd, dropout: p, hidden: 32 })
}

/// Model entry configured from [`preset`].
pub fn preset_entry(dataset: &str, arch: Arch) -> Option<ModelEntry> {
    let p = preset(dataset, arch)?;
    let spec = ModelSpec::new(arch, p.hidden).with_dropout(p.dropout);
    Some(ModelEntry::new(arch.name(), spec).with_optimizer(p.lr, p.weight_decay))
}
