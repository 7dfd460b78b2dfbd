//! Operators against dense formulas built directly from the edge list, and
//! spectra against a Jacobi eigenvalue oracle.

use graphfb::graph::Graph;
use graphfb::ops::{dense_eig, eigengap_check, OperatorKind};
use graphfb::synth::random_attributed;
use graphfb::{build_operator, DenseMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dense_adj(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n_nodes();
    let mut a = vec![vec![0.0; n]; n];
    for (i, j) in g.edges() {
        a[i][j] = 1.0;
        a[j][i] = 1.0;
    }
    a
}

fn oracle(g: &Graph, kind: OperatorKind, gamma: f64) -> DenseMatrix {
    let a = dense_adj(g);
    let n = a.len();
    let d: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let eye = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let at = a[i][j] + eye(i, j);
            let (di, dj) = (d[i] + 1.0, d[j] + 1.0);
            let a_sym = a[i][j] / (d[i] * d[j]).sqrt();
            let a_rw = a[i][j] / d[i];
            let hat_sym = at / (di * dj).sqrt();
            let hat_rw = at / di;
            let lrw = (gamma * eye(i, j) + a_rw) / (1.0 + gamma);
            m[(i, j)] = match kind {
                OperatorKind::L => d[i] * eye(i, j) - a[i][j],
                OperatorKind::LSym => eye(i, j) - a_sym,
                OperatorKind::LRw => eye(i, j) - a_rw,
                OperatorKind::ASym => a_sym,
                OperatorKind::ARw => a_rw,
                OperatorKind::HatASym => hat_sym,
                OperatorKind::HatARw => hat_rw,
                OperatorKind::HatLSym => eye(i, j) - hat_sym,
                OperatorKind::HatLRw => eye(i, j) - hat_rw,
                OperatorKind::ALrw => lrw,
                OperatorKind::LLrw => eye(i, j) - lrw,
                OperatorKind::HatARwGamma => (gamma * eye(i, j) + a[i][j]) / (gamma + d[i]),
            };
        }
    }
    m
}

/// Cyclic Jacobi rotations on a symmetric matrix; eigenvalues ascending.
fn jacobi_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn graph(seed: u64, n: usize) -> Graph {
    random_attributed(n, 2, 2, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn every_operator_matches_dense_formula() {
    for seed in 0..8 {
        let g = graph(seed, 4 + seed as usize * 3);
        for kind in OperatorKind::ALL {
            let op = build_operator(&g, kind, kind.needs_gamma().then_some(0.8)).unwrap();
            let dev = op.matrix().to_dense().max_abs_diff(&oracle(&g, kind, 0.8));
            assert!(dev < 1e-14, "{kind} seed {seed}: {dev:e}");
        }
    }
}

#[test]
fn symmetric_spectra_match_jacobi() {
    for seed in 0..5 {
        let g = graph(100 + seed, 6 + 4 * seed as usize);
        for kind in OperatorKind::ALL.into_iter().filter(|k| k.is_symmetric()) {
            let op = build_operator(&g, kind, kind.needs_gamma().then_some(1.0)).unwrap();
            let ours = dense_eig(&op).unwrap().values;
            let theirs = jacobi_eigenvalues(&op.matrix().to_dense());
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-10, "{kind}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn random_walk_spectra_match_symmetric_twin() {
    // D^{-1}A is similar to D^{-1/2} A D^{-1/2}.
    let g = graph(7, 15);
    let rw = dense_eig(&build_operator(&g, OperatorKind::HatARw, None).unwrap()).unwrap().values;
    let sym = jacobi_eigenvalues(&build_operator(&g, OperatorKind::HatASym, None).unwrap().matrix().to_dense());
    for (a, b) in rw.iter().zip(&sym) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn laplacian_spectra_are_in_known_ranges() {
    let g = graph(8, 20);
    let lsym = dense_eig(&build_operator(&g, OperatorKind::LSym, None).unwrap()).unwrap().values;
    assert!(lsym[0].abs() < 1e-12 && *lsym.last().unwrap() <= 2.0 + 1e-12);
    let hat = dense_eig(&build_operator(&g, OperatorKind::HatLSym, None).unwrap()).unwrap().values;
    assert!(hat[0].abs() < 1e-12 && *hat.last().unwrap() < 2.0);
}

#[test]
fn complete_graph_eigengap_closed_form() {
    // A_rw of K_n has eigenvalues 1 and -1/(n-1); the renormalized walk
    // has 1 and (γ-1)/(γ+n-1).
    for n in [3usize, 5, 8] {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let (g, _) = Graph::from_edges(n, &edges, DenseMatrix::zeros(n, 1), vec![0; n], 1).unwrap();
        for gamma in [0.5, 1.0, 2.0] {
            let r = eigengap_check(&g, gamma).unwrap();
            let mu = -1.0 / (n as f64 - 1.0);
            let lazy = (gamma + mu) / (1.0 + gamma);
            let d = n as f64 - 1.0;
            let renorm = (gamma - 1.0) / (gamma + d);
            assert!((r.ratio_lazy - lazy).abs() < 1e-12, "n={n} γ={gamma}");
            assert!((r.ratio_renorm - renorm).abs() < 1e-12, "n={n} γ={gamma}");
            assert!(r.holds);
        }
    }
}

#[test]
fn eigengap_rejects_bipartite_and_disconnected() {
    let (path, _) = Graph::from_edges(3, &[(0, 1), (1, 2)], DenseMatrix::zeros(3, 1), vec![0; 3], 1).unwrap();
    assert_eq!(eigengap_check(&path, 1.0).unwrap_err().code(), "bipartite");
    let (two, _) =
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], DenseMatrix::zeros(6, 1), vec![0; 6], 1)
            .unwrap();
    assert_eq!(eigengap_check(&two, 1.0).unwrap_err().code(), "disconnected");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn low_plus_high_is_identity(seed in 0u64..10_000, n in 2usize..40, gamma in 0.01f64..10.0) {
        let g = graph(seed, n);
        for kind in OperatorKind::ALL {
            if let Some(hp) = kind.high_pass_partner() {
                let lp = build_operator(&g, kind, kind.needs_gamma().then_some(gamma)).unwrap();
                let hp = build_operator(&g, hp, hp.needs_gamma().then_some(gamma)).unwrap();
                let sum = lp.matrix().to_dense().add(&hp.matrix().to_dense()).unwrap();
                prop_assert_eq!(sum, DenseMatrix::identity(n));
            }
        }
    }

    #[test]
    fn walk_operators_are_row_stochastic(seed in 0u64..10_000, n in 2usize..40, gamma in 0.01f64..10.0) {
        let g = graph(seed, n);
        for kind in OperatorKind::ALL.into_iter().filter(|k| k.is_row_stochastic()) {
            let op = build_operator(&g, kind, kind.needs_gamma().then_some(gamma)).unwrap();
            for s in op.matrix().row_sums() {
                prop_assert!((s - 1.0).abs() < 1e-13);
            }
        }
    }
}
