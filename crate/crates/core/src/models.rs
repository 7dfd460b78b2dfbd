//! MLP, GCN and the two-channel filterbank models FB-GCN and FB-SAGE.
//!
//! Every model is a stack of `n_layers` bias-free linear maps. A two-channel
//! layer is
//!
//! ```text
//! H_L = LP · ReLU(H W_L)        H_H = HP · ReLU(H W_H)
//! H'  = ReLU(σ(a_L) H_L + σ(a_H) H_H)
//! ```
//!
//! with the outer ReLU dropped on the last layer, whose output is the logits.
//! FB-SAGE uses the fixed node weights `w_ij = 1/(d_i + 1)`, which makes its
//! channels exactly `LP = I + Â_rw` and `HP = L̂_rw`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autodiff::{dropout_csr, grad_check, sigmoid, GradCheckOptions, GradCheckReport, Tape, Var};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ops::{build_operator, OperatorKind};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arch {
    Mlp,
    Gcn,
    FbGcn,
    FbSage,
}

impl Arch {
    pub const ALL: [Arch; 4] = [Arch::Mlp, Arch::Gcn, Arch::FbGcn, Arch::FbSage];

    pub fn name(self) -> &'static str {
        match self {
            Arch::Mlp => "mlp",
            Arch::Gcn => "gcn",
            Arch::FbGcn => "fb_gcn",
            Arch::FbSage => "fb_sage",
        }
    }

    pub fn is_filterbank(self) -> bool {
        matches!(self, Arch::FbGcn | Arch::FbSage)
    }
}

impl fmt::Display for Arch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Arch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        Arch::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown architecture '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ChannelMode {
    #[default]
    TwoChannel,
    /// Only the low-pass path, with its weight fixed at 1.
    LpOnly,
    /// Only the high-pass path, with its weight fixed at 1.
    HpOnly,
}

impl ChannelMode {
    pub fn name(self) -> &'static str {
        match self {
            ChannelMode::TwoChannel => "two_channel",
            ChannelMode::LpOnly => "lp_only",
            ChannelMode::HpOnly => "hp_only",
        }
    }

    fn uses_lp(self) -> bool {
        self != ChannelMode::HpOnly
    }

    fn uses_hp(self) -> bool {
        self != ChannelMode::LpOnly
    }
}

impl FromStr for ChannelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "two_channel" | "two" | "2" => Ok(ChannelMode::TwoChannel),
            "lp_only" | "lp" => Ok(ChannelMode::LpOnly),
            "hp_only" | "hp" => Ok(ChannelMode::HpOnly),
            _ => Err(Error::InvalidSpec(format!("unknown channel mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TransformMode {
    /// ReLU between the channel weight and the filter.
    #[default]
    Nonlinear,
    Linear,
}

impl TransformMode {
    pub fn name(self) -> &'static str {
        match self {
            TransformMode::Nonlinear => "nonlinear",
            TransformMode::Linear => "linear",
        }
    }
}

impl FromStr for TransformMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nonlinear" => Ok(TransformMode::Nonlinear),
            "linear" => Ok(TransformMode::Linear),
            _ => Err(Error::InvalidSpec(format!("unknown transform mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "SpecFields")]
pub struct ModelSpec {
    pub arch: Arch,
    pub n_layers: usize,
    pub hidden_dim: usize,
    pub lp_kind: OperatorKind,
    pub hp_kind: OperatorKind,
    pub gamma: Option<f64>,
    pub dropout_p: f64,
    pub channel_mode: ChannelMode,
    pub transform_mode: TransformMode,
}

/// Deserialized form where everything except `arch` and `hidden_dim`
/// falls back to [`ModelSpec::new`].
#[derive(Deserialize)]
struct SpecFields {
    arch: Arch,
    hidden_dim: usize,
    n_layers: Option<usize>,
    lp_kind: Option<OperatorKind>,
    hp_kind: Option<OperatorKind>,
    gamma: Option<f64>,
    dropout_p: Option<f64>,
    channel_mode: Option<ChannelMode>,
    transform_mode: Option<TransformMode>,
}

impl From<SpecFields> for ModelSpec {
    fn from(f: SpecFields) -> Self {
        let d = ModelSpec::new(f.arch, f.hidden_dim);
        ModelSpec {
            n_layers: f.n_layers.unwrap_or(d.n_layers),
            lp_kind: f.lp_kind.unwrap_or(d.lp_kind),
            hp_kind: f.hp_kind.unwrap_or(d.hp_kind),
            gamma: f.gamma,
            dropout_p: f.dropout_p.unwrap_or(d.dropout_p),
            channel_mode: f.channel_mode.unwrap_or(d.channel_mode),
            transform_mode: f.transform_mode.unwrap_or(d.transform_mode),
            ..d
        }
    }
}

impl ModelSpec {
    pub fn new(arch: Arch, hidden_dim: usize) -> Self {
        let (lp_kind, hp_kind) = match arch {
            Arch::FbSage => (OperatorKind::HatARw, OperatorKind::HatLRw),
            _ => (OperatorKind::HatASym, OperatorKind::HatLSym),
        };
        ModelSpec {
            arch,
            n_layers: 2,
            hidden_dim,
            lp_kind,
            hp_kind,
            gamma: None,
            dropout_p: 0.5,
            channel_mode: ChannelMode::TwoChannel,
            transform_mode: TransformMode::Nonlinear,
        }
    }

    pub fn with_dropout(mut self, p: f64) -> Self {
        self.dropout_p = p;
        self
    }

    pub fn with_channels(mut self, mode: ChannelMode) -> Self {
        self.channel_mode = mode;
        self
    }

    pub fn with_transform(mut self, mode: TransformMode) -> Self {
        self.transform_mode = mode;
        self
    }

    pub fn with_layers(mut self, n: usize) -> Self {
        self.n_layers = n;
        self
    }

    pub fn with_operators(mut self, lp: OperatorKind, hp: OperatorKind) -> Self {
        self.lp_kind = lp;
        self.hp_kind = hp;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_layers == 0 {
            return Err(Error::InvalidSpec("n_layers must be at least 1".into()));
        }
        if self.hidden_dim == 0 && self.n_layers > 1 {
            return Err(Error::InvalidSpec("hidden_dim must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.dropout_p) {
            return Err(Error::InvalidDropout(self.dropout_p));
        }
        if !self.arch.is_filterbank() {
            if self.channel_mode != ChannelMode::TwoChannel {
                return Err(Error::InvalidSpec(format!(
                    "channel mode {} requires a filterbank architecture",
                    self.channel_mode.name()
                )));
            }
            if self.transform_mode != TransformMode::Nonlinear {
                return Err(Error::InvalidSpec(format!(
                    "transform mode {} requires a filterbank architecture",
                    self.transform_mode.name()
                )));
            }
        }
        match self.arch {
            Arch::FbGcn => {
                if self.lp_kind.high_pass_partner() != Some(self.hp_kind) {
                    return Err(Error::InvalidSpec(format!(
                        "{} and {} do not sum to the identity",
                        self.lp_kind, self.hp_kind
                    )));
                }
            }
            Arch::FbSage => {
                if (self.lp_kind, self.hp_kind) != (OperatorKind::HatARw, OperatorKind::HatLRw) {
                    return Err(Error::InvalidSpec(
                        "fb_sage uses fixed 1/(d+1) weights; operators must be hatA_rw/hatL_rw".into(),
                    ));
                }
            }
            _ => {}
        }
        let uses_gamma = match self.arch {
            Arch::Gcn => self.lp_kind.needs_gamma(),
            Arch::FbGcn => self.lp_kind.needs_gamma() || self.hp_kind.needs_gamma(),
            _ => false,
        };
        if uses_gamma {
            match self.gamma {
                Some(g) if g > 0.0 && g.is_finite() => {}
                _ => return Err(Error::InvalidSpec(format!("{} needs gamma > 0", self.lp_kind))),
            }
        }
        Ok(())
    }

    /// Widths of the layer inputs and the output: `[F, h, …, h, C]`.
    pub fn dims(&self, n_features: usize, n_classes: usize) -> Vec<usize> {
        let mut d = vec![n_features];
        d.extend(std::iter::repeat(self.hidden_dim).take(self.n_layers - 1));
        d.push(n_classes);
        d
    }

    /// Stable FNV-1a hash of the JSON form, stored alongside parameters.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("spec serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in json.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitRecord {
    pub scheme: String,
    pub seed: u64,
}

/// Named trainable tensors for one model. Mixing weights are stored raw; the
/// effective weight is `sigmoid(raw)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub spec: ModelSpec,
    pub spec_hash: String,
    pub n_features: usize,
    pub n_classes: usize,
    pub init: InitRecord,
    pub names: Vec<String>,
    pub tensors: Vec<DenseMatrix>,
}

impl ParamSet {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn get(&self, name: &str) -> Option<&DenseMatrix> {
        self.index_of(name).map(|i| &self.tensors[i])
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut DenseMatrix> {
        self.index_of(name).map(move |i| &mut self.tensors[i])
    }

    pub fn set(&mut self, name: &str, value: DenseMatrix) -> Result<()> {
        let slot = self.get_mut(name).ok_or_else(|| Error::InvalidSpec(format!("no parameter '{name}'")))?;
        if slot.shape() != value.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{name}: {:?} vs {:?}",
                slot.shape(),
                value.shape()
            )));
        }
        *slot = value;
        Ok(())
    }

    /// Weight decay applies to weight matrices only, not mixing scalars.
    pub fn decay_mask(&self) -> Vec<bool> {
        self.names.iter().map(|n| n.starts_with('W')).collect()
    }

    pub fn n_scalars(&self) -> usize {
        self.tensors.iter().map(|t| t.as_slice().len()).sum()
    }

    /// Effective `(α_L, α_H)` per layer for filterbank models, as used in
    /// the forward pass (fixed 1/0 for single-channel modes).
    pub fn alphas(&self) -> Vec<(f64, f64)> {
        if !self.spec.arch.is_filterbank() {
            return Vec::new();
        }
        (0..self.spec.n_layers)
            .map(|l| {
                let raw = |c: &str| self.get(&format!("alpha_{c}.{l}")).map(|t| t[(0, 0)]).unwrap_or(0.0);
                match self.spec.channel_mode {
                    ChannelMode::TwoChannel => (sigmoid(raw("L")), sigmoid(raw("H"))),
                    ChannelMode::LpOnly => (1.0, 0.0),
                    ChannelMode::HpOnly => (0.0, 1.0),
                }
            })
            .collect()
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        crate::io::write_json(path, self)
    }

    pub fn load(path: &std::path::Path) -> Result<ParamSet> {
        let p: ParamSet = crate::io::read_json(path)?;
        if p.spec.hash() != p.spec_hash {
            return Err(Error::InvalidSpec(format!("{}: spec hash mismatch", path.display())));
        }
        Ok(p)
    }
}

pub fn glorot_bound(fan_in: usize, fan_out: usize) -> f64 {
    (6.0 / (fan_in + fan_out) as f64).sqrt()
}

fn glorot<R: Rng>(fan_in: usize, fan_out: usize, rng: &mut R) -> DenseMatrix {
    let b = glorot_bound(fan_in, fan_out);
    let data = (0..fan_in * fan_out).map(|_| rng.gen_range(-b..=b)).collect();
    DenseMatrix::from_vec(fan_in, fan_out, data).expect("sized")
}

/// Glorot-uniform weights and zero raw mixing weights (effective 0.5).
pub fn init_params(spec: &ModelSpec, n_features: usize, n_classes: usize, seed: u64) -> Result<ParamSet> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = spec.dims(n_features, n_classes);
    let mut names = Vec::new();
    let mut tensors = Vec::new();
    for l in 0..spec.n_layers {
        let (fi, fo) = (dims[l], dims[l + 1]);
        if spec.arch.is_filterbank() {
            names.push(format!("W_L.{l}"));
            tensors.push(glorot(fi, fo, &mut rng));
            names.push(format!("W_H.{l}"));
            tensors.push(glorot(fi, fo, &mut rng));
        } else {
            names.push(format!("W.{l}"));
            tensors.push(glorot(fi, fo, &mut rng));
        }
    }
    if spec.arch.is_filterbank() {
        for l in 0..spec.n_layers {
            for c in ["L", "H"] {
                names.push(format!("alpha_{c}.{l}"));
                tensors.push(DenseMatrix::scalar(0.0));
            }
        }
    }
    Ok(ParamSet {
        spec: spec.clone(),
        spec_hash: spec.hash(),
        n_features,
        n_classes,
        init: InitRecord { scheme: "glorot_uniform".into(), seed },
        names,
        tensors,
    })
}

/// Number of trainable scalars without materializing them.
pub fn param_count(spec: &ModelSpec, n_features: usize, n_classes: usize) -> usize {
    let dims = spec.dims(n_features, n_classes);
    let weights: usize = dims.windows(2).map(|w| w[0] * w[1]).sum();
    if spec.arch.is_filterbank() {
        2 * weights + 2 * spec.n_layers
    } else {
        weights
    }
}

/// Constant propagation matrices a model multiplies by.
#[derive(Debug, Clone)]
pub struct ModelOps {
    pub lp: Option<Arc<CsrMatrix>>,
    pub hp: Option<Arc<CsrMatrix>>,
}

impl ModelOps {
    pub fn build(graph: &Graph, spec: &ModelSpec) -> Result<ModelOps> {
        spec.validate()?;
        let op = |k: OperatorKind| -> Result<Arc<CsrMatrix>> {
            let gamma = if k.needs_gamma() { spec.gamma } else { None };
            Ok(Arc::new(build_operator(graph, k, gamma)?.into_matrix()))
        };
        Ok(match spec.arch {
            Arch::Mlp => ModelOps { lp: None, hp: None },
            Arch::Gcn => ModelOps { lp: Some(op(spec.lp_kind)?), hp: None },
            Arch::FbGcn => ModelOps { lp: Some(op(spec.lp_kind)?), hp: Some(op(spec.hp_kind)?) },
            Arch::FbSage => {
                let a_rw = build_operator(graph, OperatorKind::HatARw, None)?.into_matrix();
                let lp = CsrMatrix::identity(graph.n_nodes()).add(&a_rw)?;
                ModelOps { lp: Some(Arc::new(lp)), hp: Some(op(OperatorKind::HatLRw)?) }
            }
        })
    }
}

/// Node-by-node evaluation of the FB-SAGE channels with `w_ij = 1/(d_i+1)`
/// over `j ∈ N(i) ∪ {i}`:
/// `h_L(i) = Σ_j w_ij (ĥ_L(i) + ĥ_L(j))`, `h_H(i) = Σ_j w_ij (ĥ_H(i) − ĥ_H(j))`.
pub fn sage_channels_node_level(
    graph: &Graph,
    h_lp: &DenseMatrix,
    h_hp: &DenseMatrix,
) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = graph.n_nodes();
    if h_lp.rows() != n || h_hp.rows() != n {
        return Err(Error::DimensionMismatch(format!("{n} nodes vs {} / {} rows", h_lp.rows(), h_hp.rows())));
    }
    let mut out_l = DenseMatrix::zeros(n, h_lp.cols());
    let mut out_h = DenseMatrix::zeros(n, h_hp.cols());
    for i in 0..n {
        let w = 1.0 / (graph.degree(i) as f64 + 1.0);
        let closed = std::iter::once(i).chain(graph.neighbors(i).iter().copied());
        for j in closed {
            for c in 0..h_lp.cols() {
                out_l[(i, c)] += w * (h_lp[(i, c)] + h_lp[(j, c)]);
            }
            for c in 0..h_hp.cols() {
                out_h[(i, c)] += w * (h_hp[(i, c)] - h_hp[(j, c)]);
            }
        }
    }
    Ok((out_l, out_h))
}

/// Node features, stored sparse when mostly zero.
#[derive(Debug, Clone)]
pub enum FeatureInput {
    Dense(DenseMatrix),
    Sparse(Arc<CsrMatrix>),
}

impl FeatureInput {
    pub fn new(x: &DenseMatrix) -> FeatureInput {
        if x.density() < 0.5 {
            FeatureInput::Sparse(Arc::new(CsrMatrix::from_dense(x)))
        } else {
            FeatureInput::Dense(x.clone())
        }
    }

    pub fn dense(x: &DenseMatrix) -> FeatureInput {
        FeatureInput::Dense(x.clone())
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            FeatureInput::Dense(m) => m.shape(),
            FeatureInput::Sparse(m) => (m.n_rows(), m.n_cols()),
        }
    }
}

/// Per-layer intermediate nodes kept for embedding export.
#[derive(Debug, Clone, Copy)]
pub struct LayerVars {
    /// `H_L` after filtering, before mixing.
    pub lp: Option<Var>,
    pub hp: Option<Var>,
    /// Layer output (`H^l`, or the logits on the last layer).
    pub combined: Var,
}

#[derive(Debug, Clone)]
pub struct ForwardOutput {
    pub logits: Var,
    pub layers: Vec<LayerVars>,
    /// Tape nodes of the parameters, in `ParamSet` order.
    pub params: Vec<Var>,
}

enum LayerInput {
    Sparse(Arc<CsrMatrix>),
    Node(Var),
}

fn linear(tape: &mut Tape, input: &LayerInput, w: Var) -> Result<Var> {
    match input {
        LayerInput::Sparse(x) => tape.spmm(x.clone(), w),
        LayerInput::Node(h) => tape.matmul(*h, w),
    }
}

fn need(op: &Option<Arc<CsrMatrix>>, what: &str) -> Result<Arc<CsrMatrix>> {
    op.clone().ok_or_else(|| Error::InvalidSpec(format!("model ops missing {what} operator")))
}

/// Records one forward pass on `tape`. Dropout is applied to every layer
/// input when `train` is set.
pub fn forward<R: Rng>(
    tape: &mut Tape,
    ops: &ModelOps,
    params: &ParamSet,
    x: &FeatureInput,
    train: bool,
    rng: &mut R,
) -> Result<ForwardOutput> {
    let spec = &params.spec;
    let (n, f) = x.shape();
    if f != params.n_features {
        return Err(Error::DimensionMismatch(format!("features have {f} columns, model expects {}", params.n_features)));
    }
    for m in [&ops.lp, &ops.hp].into_iter().flatten() {
        if m.n_rows() != n {
            return Err(Error::DimensionMismatch(format!("operator is {}x{}, features have {n} rows", m.n_rows(), m.n_cols())));
        }
    }
    let pvars: Vec<Var> = params.tensors.iter().map(|t| tape.param(t.clone())).collect();
    let p = |name: String| -> Result<Var> {
        params.index_of(&name).map(|i| pvars[i]).ok_or_else(|| Error::InvalidSpec(format!("missing parameter {name}")))
    };

    let mut input = match x {
        FeatureInput::Sparse(m) => {
            let m = if train && spec.dropout_p > 0.0 { Arc::new(dropout_csr(m, spec.dropout_p, rng)?) } else { m.clone() };
            LayerInput::Sparse(m)
        }
        FeatureInput::Dense(m) => {
            let v = tape.constant(m.clone());
            LayerInput::Node(tape.dropout(v, spec.dropout_p, train, rng)?)
        }
    };
    let mut layers = Vec::with_capacity(spec.n_layers);
    for l in 0..spec.n_layers {
        let last = l + 1 == spec.n_layers;
        if l > 0 {
            if let LayerInput::Node(h) = input {
                input = LayerInput::Node(tape.dropout(h, spec.dropout_p, train, rng)?);
            }
        }
        let lv = match spec.arch {
            Arch::Mlp => {
                let z = linear(tape, &input, p(format!("W.{l}"))?)?;
                LayerVars { lp: None, hp: None, combined: z }
            }
            Arch::Gcn => {
                let z = linear(tape, &input, p(format!("W.{l}"))?)?;
                let z = tape.spmm(need(&ops.lp, "low-pass")?, z)?;
                LayerVars { lp: None, hp: None, combined: z }
            }
            Arch::FbGcn | Arch::FbSage => {
                let mut channel = |c: &str, op: Arc<CsrMatrix>| -> Result<Var> {
                    let mut t = linear(tape, &input, p(format!("W_{c}.{l}"))?)?;
                    if spec.transform_mode == TransformMode::Nonlinear {
                        t = tape.relu(t);
                    }
                    tape.spmm(op, t)
                };
                let h_l = if spec.channel_mode.uses_lp() { Some(channel("L", need(&ops.lp, "low-pass")?)?) } else { None };
                let h_h = if spec.channel_mode.uses_hp() { Some(channel("H", need(&ops.hp, "high-pass")?)?) } else { None };
                let combined = match (h_l, h_h) {
                    (Some(a), Some(b)) => {
                        let al = tape.sigmoid(p(format!("alpha_L.{l}"))?);
                        let ah = tape.sigmoid(p(format!("alpha_H.{l}"))?);
                        let a = tape.scale(a, al)?;
                        let b = tape.scale(b, ah)?;
                        tape.add(a, b)?
                    }
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!("at least one channel is active"),
                };
                LayerVars { lp: h_l, hp: h_h, combined }
            }
        };
        let out = if last { lv.combined } else { tape.relu(lv.combined) };
        layers.push(LayerVars { combined: out, ..lv });
        input = LayerInput::Node(out);
    }
    let logits = layers.last().expect("n_layers >= 1").combined;
    Ok(ForwardOutput { logits, layers, params: pvars })
}

/// Evaluation-mode logits.
pub fn predict(ops: &ModelOps, params: &ParamSet, x: &FeatureInput) -> Result<DenseMatrix> {
    let mut tape = Tape::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let out = forward(&mut tape, ops, params, x, false, &mut rng)?;
    Ok(tape.value(out.logits).clone())
}

/// Compares analytic parameter gradients of the full-graph cross-entropy
/// loss against central differences. Dropout is turned off and the mixing
/// weights are moved away from zero so their gradients are exercised too.
pub fn check_gradients(graph: &Graph, spec: &ModelSpec, seed: u64, opts: GradCheckOptions) -> Result<GradCheckReport> {
    let spec = ModelSpec { dropout_p: 0.0, ..spec.clone() };
    let mut params = init_params(&spec, graph.n_features(), graph.n_classes(), seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for (name, t) in params.names.iter().zip(params.tensors.iter_mut()) {
        if name.starts_with("alpha") {
            *t = DenseMatrix::scalar(rng.gen_range(-1.0..1.0));
        }
    }
    let ops = ModelOps::build(graph, &spec)?;
    let x = FeatureInput::new(graph.features());
    let all: Vec<usize> = (0..graph.n_nodes()).collect();
    let template = params.clone();
    grad_check(
        &params.tensors,
        |tensors| {
            let p = ParamSet { tensors: tensors.to_vec(), ..template.clone() };
            let mut tape = Tape::new();
            let out = forward(&mut tape, &ops, &p, &x, false, &mut rng.clone())?;
            let loss = tape.softmax_cross_entropy(out.logits, graph.labels(), &all)?;
            tape.backward(loss)?;
            let grads = out
                .params
                .iter()
                .zip(tensors)
                .map(|(&v, t)| tape.grad(v).cloned().unwrap_or_else(|| DenseMatrix::zeros(t.rows(), t.cols())))
                .collect();
            Ok((tape.value(loss)[(0, 0)], grads))
        },
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node(x: &[f64]) -> Graph {
        let f = DenseMatrix::column_vector(x);
        Graph::from_edges(2, &[(0, 1)], f, vec![0, 1], 2).unwrap().0
    }

    fn set_all(p: &mut ParamSet, prefix: &str, v: f64) {
        for i in 0..p.names.len() {
            if p.names[i].starts_with(prefix) {
                let (r, c) = p.tensors[i].shape();
                p.tensors[i] = DenseMatrix::filled(r, c, v);
            }
        }
    }

    #[test]
    fn fb_gcn_two_node_hand_computation() {
        // LP = [[.5,.5],[.5,.5]], HP = [[.5,-.5],[-.5,.5]], all weights 1,
        // α = 0.5. Layer 1: LP·[3,1] = [2,2], HP·[3,1] = [1,-1] → [1.5,0.5].
        // Layer 2: [1,1] and [.5,-.5] → [.75,.25].
        let g = two_node(&[3.0, 1.0]);
        let spec = ModelSpec::new(Arch::FbGcn, 1).with_dropout(0.0);
        let mut p = init_params(&spec, 1, 1, 0).unwrap();
        set_all(&mut p, "W", 1.0);
        let ops = ModelOps::build(&g, &spec).unwrap();
        let z = predict(&ops, &p, &FeatureInput::dense(g.features())).unwrap();
        assert!(z.max_abs_diff(&DenseMatrix::column_vector(&[0.75, 0.25])) < 1e-15, "{z:?}");
    }

    #[test]
    fn gcn_on_triangle_matches_dense_product() {
        // Â_sym on K3 is J/3. With all-ones weights, layer 1 is 4/3 everywhere
        // and layer 2 is 2 · 4/3.
        let x = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        let (g, _) = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], x.clone(), vec![0, 1, 0], 2).unwrap();
        let spec = ModelSpec::new(Arch::Gcn, 2).with_dropout(0.0);
        let mut p = init_params(&spec, 2, 2, 0).unwrap();
        set_all(&mut p, "W", 1.0);
        let ops = ModelOps::build(&g, &spec).unwrap();
        let z = predict(&ops, &p, &FeatureInput::dense(&x)).unwrap();
        let a = DenseMatrix::filled(3, 3, 1.0 / 3.0);
        let w = DenseMatrix::filled(2, 2, 1.0);
        let h = a.matmul(&x.matmul(&w).unwrap()).unwrap().map(|v| v.max(0.0));
        let expect = a.matmul(&h.matmul(&w).unwrap()).unwrap();
        assert!(z.max_abs_diff(&expect) < 1e-14);
        assert!(z.max_abs_diff(&DenseMatrix::filled(3, 2, 8.0 / 3.0)) < 1e-14);
    }

    #[test]
    fn zero_input_and_zero_weights_give_zero_logits() {
        let g = two_node(&[0.0, 0.0]);
        for arch in Arch::ALL {
            let spec = ModelSpec::new(arch, 4).with_dropout(0.0);
            let p = init_params(&spec, 1, 3, 1).unwrap();
            let ops = ModelOps::build(&g, &spec).unwrap();
            let z = predict(&ops, &p, &FeatureInput::dense(g.features())).unwrap();
            assert_eq!(z.max_abs(), 0.0, "{arch}");
        }
        let g = two_node(&[1.0, 2.0]);
        let spec = ModelSpec::new(Arch::Gcn, 4).with_dropout(0.0);
        let mut p = init_params(&spec, 1, 3, 1).unwrap();
        set_all(&mut p, "W", 0.0);
        let z = predict(&ModelOps::build(&g, &spec).unwrap(), &p, &FeatureInput::dense(g.features())).unwrap();
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn gcn_with_identity_operator_is_an_mlp() {
        let x = DenseMatrix::from_rows(&[[1.0, -2.0], [0.5, 3.0], [2.0, 1.0]]);
        let (g, _) = Graph::from_edges(3, &[(0, 1), (1, 2)], x.clone(), vec![0, 1, 0], 2).unwrap();
        let gcn = ModelSpec::new(Arch::Gcn, 4).with_dropout(0.0);
        let mut p = init_params(&gcn, 2, 2, 9).unwrap();
        let ops = ModelOps { lp: Some(Arc::new(CsrMatrix::identity(3))), hp: None };
        let z_gcn = predict(&ops, &p, &FeatureInput::dense(&x)).unwrap();
        p.spec = ModelSpec::new(Arch::Mlp, 4).with_dropout(0.0);
        let z_mlp = predict(&ModelOps::build(&g, &p.spec).unwrap(), &p, &FeatureInput::dense(&x)).unwrap();
        assert_eq!(z_gcn, z_mlp);
    }

    #[test]
    fn mlp_hand_computation() {
        let x = DenseMatrix::from_rows(&[[1.0, 2.0], [-1.0, 0.5]]);
        let (g, _) = Graph::from_edges(2, &[(0, 1)], x.clone(), vec![0, 1], 2).unwrap();
        let spec = ModelSpec::new(Arch::Mlp, 2).with_dropout(0.0);
        let mut p = init_params(&spec, 2, 2, 0).unwrap();
        p.set("W.0", DenseMatrix::from_rows(&[[1.0, -1.0], [0.0, 2.0]])).unwrap();
        p.set("W.1", DenseMatrix::from_rows(&[[1.0, 0.0], [1.0, 1.0]])).unwrap();
        // XW0 = [[1,3],[-1,2]] → relu [[1,3],[0,2]] → ·W1 = [[4,3],[2,2]].
        let z = predict(&ModelOps::build(&g, &spec).unwrap(), &p, &FeatureInput::dense(&x)).unwrap();
        assert_eq!(z, DenseMatrix::from_rows(&[[4.0, 3.0], [2.0, 2.0]]));
    }

    #[test]
    fn init_is_deterministic_with_half_alphas() {
        let spec = ModelSpec::new(Arch::FbGcn, 32);
        let a = init_params(&spec, 1433, 7, 5).unwrap();
        let b = init_params(&spec, 1433, 7, 5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, init_params(&spec, 1433, 7, 6).unwrap());
        assert!(a.alphas().iter().all(|&(l, h)| l == 0.5 && h == 0.5));
        let bound = (6.0f64 / 1465.0).sqrt();
        assert_eq!(glorot_bound(1433, 32), bound);
        assert!(a.get("W_L.0").unwrap().max_abs() <= bound);
    }

    #[test]
    fn filterbank_roughly_doubles_parameters() {
        let gcn = param_count(&ModelSpec::new(Arch::Gcn, 32), 1433, 7);
        let fb = param_count(&ModelSpec::new(Arch::FbGcn, 32), 1433, 7);
        assert_eq!(fb, 2 * gcn + 4);
        let p = init_params(&ModelSpec::new(Arch::FbGcn, 32), 1433, 7, 0).unwrap();
        assert_eq!(p.n_scalars(), fb);
    }

    #[test]
    fn spec_validation() {
        let bad_pair = ModelSpec::new(Arch::FbGcn, 8).with_operators(OperatorKind::HatASym, OperatorKind::HatLRw);
        assert!(matches!(bad_pair.validate(), Err(Error::InvalidSpec(_))));
        let bad_mode = ModelSpec::new(Arch::Gcn, 8).with_channels(ChannelMode::LpOnly);
        assert!(bad_mode.validate().is_err());
        let bad_p = ModelSpec::new(Arch::Mlp, 8).with_dropout(1.0);
        assert!(matches!(bad_p.validate(), Err(Error::InvalidDropout(_))));
        let lazy = ModelSpec::new(Arch::FbGcn, 8).with_operators(OperatorKind::ALrw, OperatorKind::LLrw);
        assert!(lazy.validate().is_err());
        assert!(ModelSpec { gamma: Some(1.0), ..lazy }.validate().is_ok());
        assert_eq!("FB-GCN".parse::<Arch>().unwrap(), Arch::FbGcn);
    }

    #[test]
    fn sage_isolated_node_and_constant_signal() {
        let x = DenseMatrix::zeros(3, 1);
        let (g, _) = Graph::from_edges(3, &[(0, 1)], x, vec![0; 3], 1).unwrap();
        let h = DenseMatrix::column_vector(&[1.0, 1.0, 5.0]);
        let (l, hp) = sage_channels_node_level(&g, &h, &h).unwrap();
        // Node 2 has only itself: w = 1, h_L = ĥ + ĥ.
        assert_eq!(l[(2, 0)], 10.0);
        assert_eq!(hp.as_slice(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = crate::synth::random_attributed(6, 3, 3, &mut rng);
        for arch in Arch::ALL {
            let r = check_gradients(&g, &ModelSpec::new(arch, 4), 7, GradCheckOptions::default()).unwrap();
            assert!(r.passes(1e-5), "{arch}: {r:?}");
        }
    }

    #[test]
    fn param_json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = init_params(&ModelSpec::new(Arch::FbSage, 3), 4, 2, 11).unwrap();
        let path = dir.path().join("params.json");
        p.save(&path).unwrap();
        assert_eq!(ParamSet::load(&path).unwrap(), p);
    }

    #[test]
    fn partial_spec_json_uses_arch_defaults() {
        let s: ModelSpec = serde_json::from_str(r#"{"arch": "fb_sage", "hidden_dim": 16, "dropout_p": 0.2}"#).unwrap();
        assert_eq!(s, ModelSpec::new(Arch::FbSage, 16).with_dropout(0.2));
        let full = ModelSpec::new(Arch::FbGcn, 8).with_channels(ChannelMode::HpOnly);
        let back: ModelSpec = serde_json::from_str(&serde_json::to_string(&full).unwrap()).unwrap();
        assert_eq!(back, full);
    }
}
