//! Reverse-mode differentiation over dense matrices.
//!
//! A [`Tape`] records every value as it is computed, so nodes are stored in
//! topological order and `backward` is a single reverse sweep. Parameters are
//! ordinary leaves with `requires_grad` set. Gradients accumulate across
//! `backward` calls until [`Tape::zero_grad`].
//!
//! A tape belongs to one worker. Build a fresh tape per training step.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dense::{compensated_sum, DenseMatrix};
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var(usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug)]
enum Op {
    Leaf,
    MatMul(Var, Var),
    Spmm(Arc<CsrMatrix>, Var),
    Add(Var, Var),
    Scale(Var, Var),
    Relu(Var),
    Sigmoid(Var),
    /// Multiplier per entry: 0 for dropped, 1/(1-p) for kept.
    Dropout(Var, Vec<f64>),
    SoftmaxCe { logits: Var, labels: Vec<usize>, mask: Vec<usize>, probs: DenseMatrix },
    Sum(Var),
}

#[derive(Debug)]
struct Node {
    value: DenseMatrix,
    op: Op,
    requires_grad: bool,
    grad: Option<DenseMatrix>,
}

#[derive(Debug, Default)]
pub struct Tape {
    nodes: Vec<Node>,
}

fn shape_err(op: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::DimensionMismatch(format!("{op}: {}x{} vs {}x{}", a.0, a.1, b.0, b.1))
}

impl Tape {
    pub fn new() -> Self {
        Tape::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, value: DenseMatrix, op: Op, requires_grad: bool) -> Var {
        self.nodes.push(Node { value, op, requires_grad, grad: None });
        Var(self.nodes.len() - 1)
    }

    fn rg(&self, v: Var) -> bool {
        self.nodes[v.0].requires_grad
    }

    /// Constant input.
    pub fn constant(&mut self, value: DenseMatrix) -> Var {
        self.push(value, Op::Leaf, false)
    }

    /// Trainable leaf.
    pub fn param(&mut self, value: DenseMatrix) -> Var {
        self.push(value, Op::Leaf, true)
    }

    pub fn value(&self, v: Var) -> &DenseMatrix {
        &self.nodes[v.0].value
    }

    /// Accumulated gradient, `None` when the node does not require one or
    /// `backward` has not reached it.
    pub fn grad(&self, v: Var) -> Option<&DenseMatrix> {
        self.nodes[v.0].grad.as_ref()
    }

    pub fn zero_grad(&mut self) {
        for n in &mut self.nodes {
            n.grad = None;
        }
    }

    pub fn matmul(&mut self, a: Var, b: Var) -> Result<Var> {
        let v = self.value(a).matmul(self.value(b))?;
        let rg = self.rg(a) || self.rg(b);
        Ok(self.push(v, Op::MatMul(a, b), rg))
    }

    /// `M · X` for a constant sparse `M`.
    pub fn spmm(&mut self, m: Arc<CsrMatrix>, x: Var) -> Result<Var> {
        let v = m.spmm(self.value(x))?;
        let rg = self.rg(x);
        Ok(self.push(v, Op::Spmm(m, x), rg))
    }

    pub fn add(&mut self, a: Var, b: Var) -> Result<Var> {
        let v = self.value(a).add(self.value(b))?;
        let rg = self.rg(a) || self.rg(b);
        Ok(self.push(v, Op::Add(a, b), rg))
    }

    /// `s · X` where `s` is a 1×1 node.
    pub fn scale(&mut self, x: Var, s: Var) -> Result<Var> {
        let sv = self.value(s);
        if sv.shape() != (1, 1) {
            return Err(shape_err("scale", sv.shape(), (1, 1)));
        }
        let v = self.value(x).scaled(sv[(0, 0)]);
        let rg = self.rg(x) || self.rg(s);
        Ok(self.push(v, Op::Scale(x, s), rg))
    }

    pub fn relu(&mut self, x: Var) -> Var {
        let v = self.value(x).map(|a| if a > 0.0 { a } else { 0.0 });
        let rg = self.rg(x);
        self.push(v, Op::Relu(x), rg)
    }

    pub fn sigmoid(&mut self, x: Var) -> Var {
        let v = self.value(x).map(sigmoid);
        let rg = self.rg(x);
        self.push(v, Op::Sigmoid(x), rg)
    }

    /// Inverted dropout. Outside training mode this is the identity and
    /// returns `x` itself.
    pub fn dropout<R: Rng>(&mut self, x: Var, p: f64, train: bool, rng: &mut R) -> Result<Var> {
        check_dropout(p)?;
        if !train || p == 0.0 {
            return Ok(x);
        }
        let keep = 1.0 / (1.0 - p);
        let mask: Vec<f64> =
            (0..self.value(x).as_slice().len()).map(|_| if rng.gen::<f64>() < p { 0.0 } else { keep }).collect();
        let xv = self.value(x);
        let data = xv.as_slice().iter().zip(&mask).map(|(a, m)| a * m).collect();
        let v = DenseMatrix::from_vec(xv.rows(), xv.cols(), data)?;
        let rg = self.rg(x);
        Ok(self.push(v, Op::Dropout(x, mask), rg))
    }

    /// Mean cross-entropy of `softmax(logits)` over the rows listed in `mask`.
    pub fn softmax_cross_entropy(&mut self, logits: Var, labels: &[usize], mask: &[usize]) -> Result<Var> {
        let z = self.value(logits);
        if labels.len() != z.rows() {
            return Err(shape_err("softmax_cross_entropy labels", (labels.len(), 1), z.shape()));
        }
        if mask.is_empty() {
            return Err(Error::InvalidArgument("empty loss mask".into()));
        }
        let probs = softmax_rows(z);
        let mut terms = Vec::with_capacity(mask.len());
        for &i in mask {
            let y = labels[i];
            if y >= z.cols() {
                return Err(Error::LabelOutOfRange { node: i, label: y as i64, n_classes: z.cols() });
            }
            terms.push(-log_softmax_at(z.row(i), y));
        }
        let loss = compensated_sum(terms) / mask.len() as f64;
        let rg = self.rg(logits);
        Ok(self.push(
            DenseMatrix::scalar(loss),
            Op::SoftmaxCe { logits, labels: labels.to_vec(), mask: mask.to_vec(), probs },
            rg,
        ))
    }

    pub fn sum(&mut self, x: Var) -> Var {
        let v = DenseMatrix::scalar(self.value(x).sum());
        let rg = self.rg(x);
        self.push(v, Op::Sum(x), rg)
    }

    /// Reverse sweep from a 1×1 `loss`, adding ∂loss/∂node into the stored
    /// gradient of every node that requires one.
    pub fn backward(&mut self, loss: Var) -> Result<()> {
        let (rows, cols) = self.value(loss).shape();
        if (rows, cols) != (1, 1) {
            return Err(Error::NonScalarLoss { rows, cols });
        }
        let mut adj: Vec<Option<DenseMatrix>> = (0..=loss.0).map(|_| None).collect();
        adj[loss.0] = Some(DenseMatrix::scalar(1.0));
        for k in (0..=loss.0).rev() {
            if !self.nodes[k].requires_grad {
                continue;
            }
            let Some(g) = adj[k].take() else { continue };
            self.propagate(k, &g, &mut adj)?;
            let node = &mut self.nodes[k];
            match &mut node.grad {
                Some(acc) => acc.add_assign(&g)?,
                None => node.grad = Some(g),
            }
        }
        Ok(())
    }

    fn propagate(&self, k: usize, g: &DenseMatrix, adj: &mut [Option<DenseMatrix>]) -> Result<()> {
        let mut send = |v: Var, d: DenseMatrix| -> Result<()> {
            if !self.nodes[v.0].requires_grad {
                return Ok(());
            }
            match &mut adj[v.0] {
                Some(acc) => acc.add_assign(&d),
                slot => {
                    *slot = Some(d);
                    Ok(())
                }
            }
        };
        match &self.nodes[k].op {
            Op::Leaf => {}
            Op::MatMul(a, b) => {
                if self.rg(*a) {
                    send(*a, g.matmul_t(self.value(*b))?)?;
                }
                if self.rg(*b) {
                    send(*b, self.value(*a).t_matmul(g)?)?;
                }
            }
            Op::Spmm(m, x) => send(*x, m.spmm_transpose(g)?)?,
            Op::Add(a, b) => {
                send(*a, g.clone())?;
                send(*b, g.clone())?;
            }
            Op::Scale(x, s) => {
                let sv = self.value(*s)[(0, 0)];
                if self.rg(*x) {
                    send(*x, g.scaled(sv))?;
                }
                if self.rg(*s) {
                    let xv = self.value(*x);
                    let d = compensated_sum(g.as_slice().iter().zip(xv.as_slice()).map(|(a, b)| a * b));
                    send(*s, DenseMatrix::scalar(d))?;
                }
            }
            Op::Relu(x) => {
                let xv = self.value(*x);
                let data = g.as_slice().iter().zip(xv.as_slice()).map(|(d, a)| if *a > 0.0 { *d } else { 0.0 });
                send(*x, DenseMatrix::from_vec(g.rows(), g.cols(), data.collect())?)?;
            }
            Op::Sigmoid(x) => {
                let y = &self.nodes[k].value;
                let data = g.as_slice().iter().zip(y.as_slice()).map(|(d, s)| d * s * (1.0 - s));
                send(*x, DenseMatrix::from_vec(g.rows(), g.cols(), data.collect())?)?;
            }
            Op::Dropout(x, mask) => {
                let data = g.as_slice().iter().zip(mask).map(|(d, m)| d * m);
                send(*x, DenseMatrix::from_vec(g.rows(), g.cols(), data.collect())?)?;
            }
            Op::SoftmaxCe { logits, labels, mask, probs } => {
                let scale = g[(0, 0)] / mask.len() as f64;
                let mut d = DenseMatrix::zeros(probs.rows(), probs.cols());
                for &i in mask {
                    let row = d.row_mut(i);
                    // Duplicate mask entries count twice, matching the forward mean.
                    for (c, (r, p)) in row.iter_mut().zip(probs.row(i)).enumerate() {
                        *r += scale * (p - if c == labels[i] { 1.0 } else { 0.0 });
                    }
                }
                send(*logits, d)?;
            }
            Op::Sum(x) => {
                let (r, c) = self.value(*x).shape();
                send(*x, DenseMatrix::filled(r, c, g[(0, 0)]))?;
            }
        }
        Ok(())
    }
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

pub fn softmax_rows(z: &DenseMatrix) -> DenseMatrix {
    let mut out = z.clone();
    for i in 0..z.rows() {
        let row = out.row_mut(i);
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut total = 0.0;
        for v in row.iter_mut() {
            *v = (*v - max).exp();
            total += *v;
        }
        for v in row.iter_mut() {
            *v /= total;
        }
    }
    out
}

fn log_softmax_at(row: &[f64], k: usize) -> f64 {
    let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + row.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
    row[k] - lse
}

fn check_dropout(p: f64) -> Result<()> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidDropout(p))
    }
}

/// Inverted dropout on the stored entries of a constant sparse matrix.
/// Used for sparse input features, which never need a gradient.
pub fn dropout_csr<R: Rng>(m: &CsrMatrix, p: f64, rng: &mut R) -> Result<CsrMatrix> {
    check_dropout(p)?;
    if p == 0.0 {
        return Ok(m.clone());
    }
    let keep = 1.0 / (1.0 - p);
    Ok(m.map_values(|_, _, v| if rng.gen::<f64>() < p { 0.0 } else { v * keep }))
}

/// Classic Adam. Weight decay is added to the gradient (L2), not decoupled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamState {
    pub m: Vec<DenseMatrix>,
    pub v: Vec<DenseMatrix>,
    pub t: u64,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub weight_decay: f64,
}

impl AdamState {
    pub fn new(params: &[DenseMatrix], lr: f64, weight_decay: f64) -> Self {
        let zeros = || params.iter().map(|p| DenseMatrix::zeros(p.rows(), p.cols())).collect();
        AdamState { m: zeros(), v: zeros(), t: 0, lr, beta1: 0.9, beta2: 0.999, eps: 1e-8, weight_decay }
    }

    /// One update. `decay[i]` selects which parameters receive weight decay.
    pub fn step(&mut self, params: &mut [DenseMatrix], grads: &[DenseMatrix], decay: &[bool]) -> Result<()> {
        if params.len() != self.m.len() || grads.len() != params.len() || decay.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "adam: {} params, {} grads, {} decay flags, state for {}",
                params.len(),
                grads.len(),
                decay.len(),
                self.m.len()
            )));
        }
        for (i, (p, g)) in params.iter().zip(grads).enumerate() {
            if p.shape() != g.shape() || p.shape() != self.m[i].shape() {
                return Err(shape_err("adam", p.shape(), g.shape()));
            }
            if !g.is_finite() {
                return Err(Error::NonFiniteGradient(format!("parameter {i} at step {}", self.t + 1)));
            }
        }
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);
        for (i, (p, g)) in params.iter_mut().zip(grads).enumerate() {
            let wd = if decay[i] { self.weight_decay } else { 0.0 };
            let m = self.m[i].as_mut_slice();
            let v = self.v[i].as_mut_slice();
            for (((pj, gj), mj), vj) in p.as_mut_slice().iter_mut().zip(g.as_slice()).zip(m).zip(v) {
                let gj = gj + wd * *pj;
                *mj = self.beta1 * *mj + (1.0 - self.beta1) * gj;
                *vj = self.beta2 * *vj + (1.0 - self.beta2) * gj * gj;
                let mhat = *mj / bc1;
                let vhat = *vj / bc2;
                *pj -= self.lr * mhat / (vhat.sqrt() + self.eps);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradCheckOptions {
    pub eps: f64,
    /// Denominator floor for the relative error, so entries with a true
    /// gradient near zero are judged on absolute error.
    pub floor: f64,
    /// Check at most this many entries per parameter (chosen at random).
    pub max_entries_per_param: usize,
    pub seed: u64,
}

impl Default for GradCheckOptions {
    fn default() -> Self {
        GradCheckOptions { eps: 1e-6, floor: 1e-4, max_entries_per_param: 64, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradCheckReport {
    pub max_rel_err: f64,
    /// (parameter index, flat entry index) of the worst entry.
    pub worst: Option<(usize, usize)>,
    pub checked: usize,
    /// Entries skipped because the one-sided slopes disagree (a ReLU kink
    /// inside the stencil).
    pub skipped_kinks: usize,
}

impl GradCheckReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.checked > 0 && self.max_rel_err < tol
    }
}

/// Compares analytic gradients against central differences.
///
/// `f` evaluates the loss and its analytic gradients at the given parameter
/// values. It must be deterministic, so dropout has to be off.
pub fn grad_check<F>(params: &[DenseMatrix], mut f: F, opts: GradCheckOptions) -> Result<GradCheckReport>
where
    F: FnMut(&[DenseMatrix]) -> Result<(f64, Vec<DenseMatrix>)>,
{
    use rand::seq::index::sample;
    use rand::SeedableRng;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let (f0, grads) = f(params)?;
    if grads.len() != params.len() {
        return Err(Error::DimensionMismatch(format!("{} grads for {} params", grads.len(), params.len())));
    }
    let mut work = params.to_vec();
    let mut report = GradCheckReport { max_rel_err: 0.0, worst: None, checked: 0, skipped_kinks: 0 };
    for pi in 0..params.len() {
        let len = params[pi].as_slice().len();
        let entries: Vec<usize> = if len <= opts.max_entries_per_param {
            (0..len).collect()
        } else {
            let mut e = sample(&mut rng, len, opts.max_entries_per_param).into_vec();
            e.sort_unstable();
            e
        };
        for j in entries {
            let orig = params[pi].as_slice()[j];
            work[pi].as_mut_slice()[j] = orig + opts.eps;
            let fp = f(&work)?.0;
            work[pi].as_mut_slice()[j] = orig - opts.eps;
            let fm = f(&work)?.0;
            work[pi].as_mut_slice()[j] = orig;
            let numeric = (fp - fm) / (2.0 * opts.eps);
            let right = (fp - f0) / opts.eps;
            let left = (f0 - fm) / opts.eps;
            if (right - left).abs() > 1e-3 * numeric.abs().max(1.0) {
                report.skipped_kinks += 1;
                continue;
            }
            let analytic = grads[pi].as_slice()[j];
            let err = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(opts.floor);
            report.checked += 1;
            if report.worst.is_none() || err > report.max_rel_err {
                report.max_rel_err = err;
                report.worst = Some((pi, j));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows)
    }

    #[test]
    fn relu_gradient_masks_non_positive_inputs() {
        let mut t = Tape::new();
        let x = t.param(m(&[&[-1.0, 0.0, 2.0]]));
        let y = t.relu(x);
        let s = t.sum(y);
        t.backward(s).unwrap();
        assert_eq!(t.grad(x).unwrap(), &m(&[&[0.0, 0.0, 1.0]]));
    }

    #[test]
    fn sum_of_parameter_gives_ones_and_accumulates() {
        let mut t = Tape::new();
        let x = t.param(DenseMatrix::filled(2, 3, 0.7));
        let s = t.sum(x);
        t.backward(s).unwrap();
        assert_eq!(t.grad(x).unwrap(), &DenseMatrix::filled(2, 3, 1.0));
        t.backward(s).unwrap();
        assert_eq!(t.grad(x).unwrap(), &DenseMatrix::filled(2, 3, 2.0));
        t.zero_grad();
        assert!(t.grad(x).is_none());
    }

    #[test]
    fn identity_spmm_passes_through() {
        let mut t = Tape::new();
        let x = t.param(m(&[&[1.0, 2.0], &[3.0, 4.0]]));
        let y = t.spmm(Arc::new(CsrMatrix::identity(2)), x).unwrap();
        assert_eq!(t.value(y), t.value(x));
        let s = t.sum(y);
        t.backward(s).unwrap();
        assert_eq!(t.grad(x).unwrap(), &DenseMatrix::filled(2, 2, 1.0));
    }

    #[test]
    fn non_scalar_loss_is_rejected() {
        let mut t = Tape::new();
        let x = t.param(DenseMatrix::zeros(2, 1));
        assert!(matches!(t.backward(x), Err(Error::NonScalarLoss { rows: 2, cols: 1 })));
    }

    #[test]
    fn constants_get_no_gradient() {
        let mut t = Tape::new();
        let a = t.constant(m(&[&[1.0, 2.0]]));
        let w = t.param(m(&[&[1.0], &[1.0]]));
        let y = t.matmul(a, w).unwrap();
        let s = t.sum(y);
        t.backward(s).unwrap();
        assert!(t.grad(a).is_none());
        assert_eq!(t.grad(w).unwrap(), &m(&[&[1.0], &[2.0]]));
    }

    #[test]
    fn cross_entropy_value_and_masked_gradient() {
        let mut t = Tape::new();
        let z = t.param(DenseMatrix::zeros(3, 2));
        let loss = t.softmax_cross_entropy(z, &[0, 1, 1], &[0, 2]).unwrap();
        assert!((t.value(loss)[(0, 0)] - 2f64.ln()).abs() < 1e-15);
        t.backward(loss).unwrap();
        let g = t.grad(z).unwrap();
        assert_eq!(g.row(1), &[0.0, 0.0]);
        assert_eq!(g.row(0), &[-0.25, 0.25]);
        assert_eq!(g.row(2), &[0.25, -0.25]);
    }

    #[test]
    fn dropout_rejects_bad_probability_and_is_identity_in_eval() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut t = Tape::new();
        let x = t.param(DenseMatrix::filled(4, 4, 1.0));
        assert!(matches!(t.dropout(x, 1.0, true, &mut rng), Err(Error::InvalidDropout(_))));
        assert!(matches!(t.dropout(x, -0.1, true, &mut rng), Err(Error::InvalidDropout(_))));
        assert_eq!(t.dropout(x, 0.5, false, &mut rng).unwrap(), x);
        let y = t.dropout(x, 0.5, true, &mut rng).unwrap();
        assert!(t.value(y).as_slice().iter().all(|&v| v == 0.0 || v == 2.0));
    }

    #[test]
    fn adam_zero_grad_leaves_params() {
        let mut p = vec![m(&[&[1.5, -2.0]])];
        let mut st = AdamState::new(&p, 0.1, 0.0);
        st.step(&mut p, &[DenseMatrix::zeros(1, 2)], &[true]).unwrap();
        assert_eq!(p[0], m(&[&[1.5, -2.0]]));
    }

    #[test]
    fn adam_first_step_moves_by_lr() {
        let mut p = vec![DenseMatrix::scalar(1.0)];
        let mut st = AdamState::new(&p, 0.1, 0.0);
        st.step(&mut p, &[DenseMatrix::scalar(1.0)], &[true]).unwrap();
        // mhat = 1, vhat = 1, so the step is lr / (1 + eps).
        assert!((p[0][(0, 0)] - (1.0 - 0.1 / (1.0 + 1e-8))).abs() < 1e-15);
    }

    #[test]
    fn adam_rejects_non_finite_gradients() {
        let mut p = vec![DenseMatrix::scalar(1.0)];
        let mut st = AdamState::new(&p, 0.1, 0.0);
        let r = st.step(&mut p, &[DenseMatrix::scalar(f64::NAN)], &[true]);
        assert!(matches!(r, Err(Error::NonFiniteGradient(_))));
        assert_eq!(st.t, 0);
    }

    #[test]
    fn grad_check_on_linear_model_is_exact() {
        let x = m(&[&[1.0, -2.0], &[0.5, 3.0]]);
        let w = m(&[&[0.3], &[-0.7]]);
        let r = grad_check(
            &[w],
            |ps| {
                let mut t = Tape::new();
                let xv = t.constant(x.clone());
                let wv = t.param(ps[0].clone());
                let y = t.matmul(xv, wv)?;
                let s = t.sum(y);
                t.backward(s)?;
                Ok((t.value(s)[(0, 0)], vec![t.grad(wv).unwrap().clone()]))
            },
            GradCheckOptions::default(),
        )
        .unwrap();
        assert!(r.max_rel_err < 1e-9, "{r:?}");
        assert_eq!(r.checked, 2);
    }

    #[test]
    fn sparse_dropout_scales_survivors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = CsrMatrix::from_dense(&DenseMatrix::filled(5, 5, 1.0));
        let d = dropout_csr(&a, 0.2, &mut rng).unwrap();
        assert!(d.to_dense().as_slice().iter().all(|&v| v == 0.0 || (v - 1.25).abs() < 1e-15));
    }
}
