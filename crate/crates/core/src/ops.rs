//! Graph filter operators: the Laplacian and affinity families, their
//! renormalized (self-loop) and lazy variants, and a dense eigensolver used
//! as a verification oracle on small graphs.
//!
//! Every operator is materialized as a CSR matrix. Low-pass/high-pass pairs
//! are built so that `LP + HP = I` holds entry-wise: the high-pass entries
//! are computed as `δ_ij − LP_ij` from the very same low-pass values.
//!
//! Row-stochastic kinds are not symmetric, but each is similar to a
//! symmetric twin `S·M·S⁻¹` with a diagonal `S` (for instance
//! `D^{1/2} A_rw D^{-1/2} = A_sym`). The twin is what [`dense_eig`] hands to
//! the symmetric solver; right eigenvectors of `M` are then `S⁻¹u`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sparse::CsrMatrix;
use crate::synth;

/// Default size cap for the O(n³) dense eigensolver.
pub const DEFAULT_EIG_CAP: usize = 3000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorKind {
    /// `D − A`
    #[serde(rename = "L")]
    L,
    /// `I − D^{-1/2} A D^{-1/2}`
    #[serde(rename = "L_sym")]
    LSym,
    /// `I − D⁻¹A`
    #[serde(rename = "L_rw")]
    LRw,
    /// `D^{-1/2} A D^{-1/2}`
    #[serde(rename = "A_sym")]
    ASym,
    /// `D⁻¹A`
    #[serde(rename = "A_rw")]
    ARw,
    /// `D̃^{-1/2} Ã D̃^{-1/2}` with `Ã = A + I`, `D̃ = D + I`
    #[serde(rename = "hatA_sym")]
    HatASym,
    /// `D̃⁻¹Ã`
    #[serde(rename = "hatA_rw")]
    HatARw,
    /// `I − Â_sym`
    #[serde(rename = "hatL_sym")]
    HatLSym,
    /// `I − Â_rw`
    #[serde(rename = "hatL_rw")]
    HatLRw,
    /// `(γI + A_rw)/(1 + γ)`
    #[serde(rename = "A_lrw")]
    ALrw,
    /// `I − A_lrw(γ)`
    #[serde(rename = "L_lrw")]
    LLrw,
    /// `(γI + D)⁻¹(γI + A)`
    #[serde(rename = "hatA_rw_gamma")]
    HatARwGamma,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 12] = [
        OperatorKind::L,
        OperatorKind::LSym,
        OperatorKind::LRw,
        OperatorKind::ASym,
        OperatorKind::ARw,
        OperatorKind::HatASym,
        OperatorKind::HatARw,
        OperatorKind::HatLSym,
        OperatorKind::HatLRw,
        OperatorKind::ALrw,
        OperatorKind::LLrw,
        OperatorKind::HatARwGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::L => "L",
            OperatorKind::LSym => "L_sym",
            OperatorKind::LRw => "L_rw",
            OperatorKind::ASym => "A_sym",
            OperatorKind::ARw => "A_rw",
            OperatorKind::HatASym => "hatA_sym",
            OperatorKind::HatARw => "hatA_rw",
            OperatorKind::HatLSym => "hatL_sym",
            OperatorKind::HatLRw => "hatL_rw",
            OperatorKind::ALrw => "A_lrw",
            OperatorKind::LLrw => "L_lrw",
            OperatorKind::HatARwGamma => "hatA_rw_gamma",
        }
    }

    pub fn needs_gamma(self) -> bool {
        matches!(self, OperatorKind::ALrw | OperatorKind::LLrw | OperatorKind::HatARwGamma)
    }

    /// Kinds that divide by the plain degree and so reject isolated nodes.
    pub fn needs_positive_degree(self) -> bool {
        matches!(
            self,
            OperatorKind::LSym
                | OperatorKind::LRw
                | OperatorKind::ASym
                | OperatorKind::ARw
                | OperatorKind::ALrw
                | OperatorKind::LLrw
        )
    }

    pub fn is_symmetric(self) -> bool {
        matches!(
            self,
            OperatorKind::L
                | OperatorKind::LSym
                | OperatorKind::ASym
                | OperatorKind::HatASym
                | OperatorKind::HatLSym
        )
    }

    pub fn is_row_stochastic(self) -> bool {
        matches!(
            self,
            OperatorKind::ARw | OperatorKind::HatARw | OperatorKind::ALrw | OperatorKind::HatARwGamma
        )
    }

    /// Laplacian-type (positive semi-definite, high-pass) kinds.
    pub fn is_laplacian(self) -> bool {
        matches!(
            self,
            OperatorKind::L
                | OperatorKind::LSym
                | OperatorKind::LRw
                | OperatorKind::HatLSym
                | OperatorKind::HatLRw
                | OperatorKind::LLrw
        )
    }

    /// High-pass partner `HP` with `LP + HP = I`, for low-pass kinds that have one.
    pub fn high_pass_partner(self) -> Option<OperatorKind> {
        match self {
            OperatorKind::ASym => Some(OperatorKind::LSym),
            OperatorKind::ARw => Some(OperatorKind::LRw),
            OperatorKind::HatASym => Some(OperatorKind::HatLSym),
            OperatorKind::HatARw => Some(OperatorKind::HatLRw),
            OperatorKind::ALrw => Some(OperatorKind::LLrw),
            _ => None,
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

/// A materialized graph filter.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    kind: OperatorKind,
    gamma: Option<f64>,
    matrix: CsrMatrix,
    /// Diagonal `s` such that `diag(s)·M·diag(s)⁻¹` is symmetric; `None`
    /// for kinds that are symmetric already.
    similarity: Option<Vec<f64>>,
}

impl SparseOperator {
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CsrMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n_rows()
    }

    /// `M · X`
    pub fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        self.matrix.spmm(x)
    }

    pub fn label(&self) -> String {
        match self.gamma {
            Some(g) => format!("{}(gamma={g})", self.kind),
            None => self.kind.to_string(),
        }
    }

    /// The symmetric matrix whose spectrum equals this operator's.
    pub fn symmetric_twin(&self) -> DenseMatrix {
        let mut m = self.matrix.to_dense();
        if let Some(s) = &self.similarity {
            let n = m.rows();
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] *= s[i] / s[j];
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                    m[(i, j)] = avg;
                    m[(j, i)] = avg;
                }
            }
        }
        m
    }
}

fn check_gamma(kind: OperatorKind, gamma: Option<f64>) -> Result<Option<f64>> {
    match (kind.needs_gamma(), gamma) {
        (true, Some(g)) if g.is_finite() && g > 0.0 => Ok(Some(g)),
        (true, Some(g)) => Err(Error::InvalidGamma {
            kind: kind.to_string(),
            msg: format!("gamma must be positive and finite, got {g}"),
        }),
        (true, None) => Err(Error::InvalidGamma {
            kind: kind.to_string(),
            msg: "gamma is required".into(),
        }),
        (false, Some(_)) => Err(Error::InvalidGamma {
            kind: kind.to_string(),
            msg: "operator takes no gamma".into(),
        }),
        (false, None) => Ok(None),
    }
}

/// Builds `kind` for `graph`. `gamma` must be given exactly for the
/// γ-parameterized kinds (`A_lrw`, `L_lrw`, `hatA_rw_gamma`).
pub fn build_operator(graph: &Graph, kind: OperatorKind, gamma: Option<f64>) -> Result<SparseOperator> {
    use OperatorKind::*;

    let gamma = check_gamma(kind, gamma)?;
    if kind.needs_positive_degree() {
        if let Some(i) = graph.first_isolated_node() {
            return Err(Error::IsolatedNode(i));
        }
    }
    let n = graph.n_nodes();
    let deg: Vec<f64> = graph.degrees().iter().map(|&d| d as f64).collect();
    let g = gamma.unwrap_or(0.0);

    // Low-pass entries for the affinity kinds: (diagonal, off-diagonal(i, j)).
    let inv_sqrt: Vec<f64> = deg.iter().map(|d| 1.0 / d.sqrt()).collect();
    let inv_sqrt_hat: Vec<f64> = deg.iter().map(|d| 1.0 / (d + 1.0).sqrt()).collect();
    let lp_entry = |base: OperatorKind, i: usize, j: usize| -> f64 {
        match base {
            ASym => inv_sqrt[i] * inv_sqrt[j],
            ARw => 1.0 / deg[i],
            HatASym => inv_sqrt_hat[i] * inv_sqrt_hat[j],
            HatARw => 1.0 / (deg[i] + 1.0),
            ALrw if i == j => g / (1.0 + g),
            ALrw => (1.0 / deg[i]) / (1.0 + g),
            HatARwGamma if i == j => g / (g + deg[i]),
            HatARwGamma => 1.0 / (g + deg[i]),
            _ => unreachable!(),
        }
    };
    let has_self_loop = |base: OperatorKind| matches!(base, HatASym | HatARw | ALrw | HatARwGamma);

    let mut indptr = Vec::with_capacity(n + 1);
    let mut indices = Vec::new();
    let mut values = Vec::new();
    indptr.push(0);
    for i in 0..n {
        let nbrs = graph.neighbors(i);
        // Neighbor lists are sorted; splice the diagonal in at its position.
        let split = nbrs.partition_point(|&j| j < i);
        let row_cols = nbrs[..split].iter().copied().chain([i]).chain(nbrs[split..].iter().copied());
        for j in row_cols {
            let diag = i == j;
            let v = match kind {
                L if diag => deg[i],
                L => -1.0,
                LSym | LRw | HatLSym | HatLRw | LLrw => {
                    let base = match kind {
                        LSym => ASym,
                        LRw => ARw,
                        HatLSym => HatASym,
                        HatLRw => HatARw,
                        _ => ALrw,
                    };
                    let lp = if diag && !has_self_loop(base) { 0.0 } else { lp_entry(base, i, j) };
                    if diag { 1.0 - lp } else { -lp }
                }
                ASym | ARw if diag => continue,
                _ => lp_entry(kind, i, j),
            };
            indices.push(j);
            values.push(v);
        }
        indptr.push(indices.len());
    }
    let matrix = CsrMatrix::from_parts(n, n, indptr, indices, values);

    let similarity = match kind {
        ARw | LRw | ALrw | LLrw => Some(deg.iter().map(|d| d.sqrt()).collect()),
        HatARw | HatLRw => Some(deg.iter().map(|d| (d + 1.0).sqrt()).collect()),
        HatARwGamma => Some(deg.iter().map(|d| (d + g).sqrt()).collect()),
        _ => None,
    };
    Ok(SparseOperator { kind, gamma, matrix, similarity })
}

/// Eigen-decomposition with eigenvalues ascending and eigenvectors as
/// matrix columns. For symmetric kinds the columns are orthonormal; for
/// row-stochastic kinds they are the unit-norm right eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
    pub orthonormal: bool,
}

impl Spectrum {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

pub fn dense_eig(op: &SparseOperator) -> Result<Spectrum> {
    dense_eig_capped(op, DEFAULT_EIG_CAP)
}

pub fn dense_eig_capped(op: &SparseOperator, cap: usize) -> Result<Spectrum> {
    let n = op.n();
    if n > cap {
        return Err(Error::EigenCapExceeded { n, cap });
    }
    let (values, u) = symmetric_eigen(&op.symmetric_twin())?;
    let mut vectors = u;
    if let Some(s) = &op.similarity {
        for k in 0..n {
            let mut norm = 0.0;
            for i in 0..n {
                vectors[(i, k)] /= s[i];
                norm += vectors[(i, k)] * vectors[(i, k)];
            }
            let norm = norm.sqrt();
            for i in 0..n {
                vectors[(i, k)] /= norm;
            }
        }
    }
    Ok(Spectrum { values, vectors, orthonormal: op.similarity.is_none() })
}

/// Symmetric eigensolver (tridiagonalization + implicit QR via nalgebra).
/// Returns ascending eigenvalues and matching orthonormal column vectors.
pub fn symmetric_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::DimensionMismatch("eigensolver needs a square matrix".into()));
    }
    let dm = DMatrix::from_row_slice(n, n, m.as_slice());
    let eig = dm
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or_else(|| Error::NoConvergence(format!("symmetric eigensolver on {n}x{n}")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, col)] = eig.eigenvectors[(i, k)];
        }
    }
    Ok((values, vectors))
}

/// Graph Fourier coefficients `Uᵀx` (columns of `x` transformed independently).
pub fn graph_fourier(u: &DenseMatrix, x: &DenseMatrix) -> Result<DenseMatrix> {
    u.t_matmul(x)
}

/// Outcome of comparing the spectral ratio `λ₂/λ₁` of the lazy random walk
/// `A_lrw^γ` against the renormalized walk `Â_rw^γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigengapReport {
    pub gamma: f64,
    pub lambda1_lazy: f64,
    pub lambda2_lazy: f64,
    pub lambda1_renorm: f64,
    pub lambda2_renorm: f64,
    pub ratio_lazy: f64,
    pub ratio_renorm: f64,
    pub holds: bool,
}

pub const EIGENGAP_TOL: f64 = 1e-10;

pub fn eigengap_check(graph: &Graph, gamma: f64) -> Result<EigengapReport> {
    if let Some(i) = graph.first_isolated_node() {
        return Err(Error::IsolatedNode(i));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if graph.is_bipartite() {
        return Err(Error::Bipartite);
    }
    let top_two = |kind| -> Result<(f64, f64)> {
        let op = build_operator(graph, kind, Some(gamma))?;
        let spec = dense_eig(&op)?;
        let n = spec.values.len();
        if n < 2 {
            return Err(Error::InvalidArgument("eigengap needs at least two nodes".into()));
        }
        Ok((spec.values[n - 1], spec.values[n - 2]))
    };
    let (l1_lazy, l2_lazy) = top_two(OperatorKind::ALrw)?;
    let (l1_ren, l2_ren) = top_two(OperatorKind::HatARwGamma)?;
    for (name, l1) in [("A_lrw", l1_lazy), ("hatA_rw_gamma", l1_ren)] {
        if (l1 - 1.0).abs() > EIGENGAP_TOL {
            return Err(Error::NoConvergence(format!("largest eigenvalue of {name} is {l1}, expected 1")));
        }
    }
    let ratio_lazy = l2_lazy / l1_lazy;
    let ratio_renorm = l2_ren / l1_ren;
    Ok(EigengapReport {
        gamma,
        lambda1_lazy: l1_lazy,
        lambda2_lazy: l2_lazy,
        lambda1_renorm: l1_ren,
        lambda2_renorm: l2_ren,
        ratio_lazy,
        ratio_renorm,
        holds: ratio_lazy >= ratio_renorm - EIGENGAP_TOL,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigengapSweep {
    pub trials: usize,
    pub gammas: Vec<f64>,
    pub checks: usize,
    pub holds: usize,
    pub min_margin: f64,
    pub failures: Vec<EigengapReport>,
}

/// Runs [`eigengap_check`] on `trials` random connected non-bipartite
/// Erdős–Rényi graphs with 3..=`max_nodes` nodes, for every γ.
pub fn eigengap_sweep(max_nodes: usize, trials: usize, gammas: &[f64], seed: u64) -> Result<EigengapSweep> {
    if max_nodes < 3 {
        return Err(Error::InvalidArgument("max_nodes must be at least 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweep = EigengapSweep {
        trials,
        gammas: gammas.to_vec(),
        checks: 0,
        holds: 0,
        min_margin: f64::INFINITY,
        failures: Vec::new(),
    };
    for _ in 0..trials {
        let n = rng.gen_range(3..=max_nodes);
        let p = rng.gen_range(0.1..0.6);
        let g = synth::connected_non_bipartite(n, p, &mut rng);
        for &gamma in gammas {
            let r = eigengap_check(&g, gamma)?;
            sweep.checks += 1;
            sweep.min_margin = sweep.min_margin.min(r.ratio_lazy - r.ratio_renorm);
            if r.holds {
                sweep.holds += 1;
            } else {
                sweep.failures.push(r);
            }
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], DenseMatrix::zeros(3, 1), vec![0; 3], 1)
            .unwrap()
            .0
    }

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)], DenseMatrix::zeros(3, 1), vec![0; 3], 1)
            .unwrap()
            .0
    }

    #[test]
    fn kind_names_round_trip() {
        for k in OperatorKind::ALL {
            assert_eq!(k.name().parse::<OperatorKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(json, format!("\"{}\"", k.name()));
        }
        assert!("nope".parse::<OperatorKind>().is_err());
    }

    #[test]
    fn k3_random_walk_entries() {
        let op = build_operator(&k3(), OperatorKind::ARw, None).unwrap();
        let m = op.matrix().to_dense();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[(i, j)], if i == j { 0.0 } else { 0.5 });
            }
        }
        let hat = build_operator(&k3(), OperatorKind::HatARw, None).unwrap();
        assert!(hat.matrix().values().iter().all(|&v| v == 1.0 / 3.0));
    }

    #[test]
    fn p3_laplacian_apply() {
        let op = build_operator(&p3(), OperatorKind::L, None).unwrap();
        let y = op.apply(&DenseMatrix::column_vector(&[1.0, 0.0, -1.0])).unwrap();
        assert_eq!(y.as_slice(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn gamma_validation() {
        let g = k3();
        assert!(matches!(build_operator(&g, OperatorKind::ALrw, None), Err(Error::InvalidGamma { .. })));
        assert!(matches!(build_operator(&g, OperatorKind::ALrw, Some(0.0)), Err(Error::InvalidGamma { .. })));
        assert!(matches!(build_operator(&g, OperatorKind::ARw, Some(1.0)), Err(Error::InvalidGamma { .. })));
        assert!(build_operator(&g, OperatorKind::ALrw, Some(1.0)).is_ok());
    }

    #[test]
    fn isolated_node_rejected_only_where_needed() {
        let (g, _) = Graph::from_edges(3, &[(0, 1)], DenseMatrix::zeros(3, 1), vec![0; 3], 1).unwrap();
        for kind in OperatorKind::ALL {
            let gamma = kind.needs_gamma().then_some(1.0);
            let r = build_operator(&g, kind, gamma);
            if kind.needs_positive_degree() {
                assert!(matches!(r, Err(Error::IsolatedNode(2))), "{kind}");
            } else {
                assert!(r.is_ok(), "{kind}");
            }
        }
    }

    #[test]
    fn eig_cap_enforced() {
        let op = build_operator(&k3(), OperatorKind::LSym, None).unwrap();
        assert!(matches!(dense_eig_capped(&op, 2), Err(Error::EigenCapExceeded { n: 3, cap: 2 })));
    }

    #[test]
    fn k2_laplacian_spectrum() {
        let (g, _) = Graph::from_edges(2, &[(0, 1)], DenseMatrix::zeros(2, 1), vec![0; 2], 1).unwrap();
        let s = dense_eig(&build_operator(&g, OperatorKind::L, None).unwrap()).unwrap();
        assert!((s.values[0] - 0.0).abs() < 1e-12);
        assert!((s.values[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigengap_rejects_bipartite_and_disconnected() {
        assert!(matches!(eigengap_check(&p3(), 1.0), Err(Error::Bipartite)));
        let x = DenseMatrix::zeros(6, 1);
        let (g, _) =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], x, vec![0; 6], 1)
                .unwrap();
        assert!(matches!(eigengap_check(&g, 1.0), Err(Error::Disconnected)));
    }
}
