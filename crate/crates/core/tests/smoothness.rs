use graphfb::graph::Graph;
use graphfb::ops::OperatorKind;
use graphfb::smoothness::{dirichlet_energy, one_hot, s_value, smoothness_report, Energies, FeatureMode};
use graphfb::synth::{random_attributed, BlockModel};
use graphfb::{build_operator, DenseMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LAPLACIANS: [OperatorKind; 5] =
    [OperatorKind::L, OperatorKind::LSym, OperatorKind::HatLSym, OperatorKind::LRw, OperatorKind::HatLRw];

fn graph(seed: u64, n: usize) -> Graph {
    random_attributed(n, 3, 3, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Edge-sum form of tr(XᵀLX) for the combinatorial Laplacian.
fn edge_sum(g: &Graph, x: &DenseMatrix) -> f64 {
    g.edges()
        .map(|(i, j)| (0..x.cols()).map(|c| (x[(i, c)] - x[(j, c)]).powi(2)).sum::<f64>())
        .sum()
}

#[test]
fn combinatorial_energy_is_edge_sum() {
    for seed in 0..10 {
        let g = graph(seed, 5 + seed as usize);
        let op = build_operator(&g, OperatorKind::L, None).unwrap();
        let e = dirichlet_energy(&op, g.features()).unwrap();
        let oracle = edge_sum(&g, g.features());
        assert!((e - oracle).abs() < 1e-10 * oracle.max(1.0));
    }
}

#[test]
fn normalized_energy_is_scaled_edge_sum() {
    let g = graph(3, 12);
    let x = g.features();
    let d: Vec<f64> = g.degrees().iter().map(|&d| d as f64 + 1.0).collect();
    let mut scaled = x.clone();
    for i in 0..x.rows() {
        scaled.row_mut(i).iter_mut().for_each(|v| *v /= d[i].sqrt());
    }
    let op = build_operator(&g, OperatorKind::HatLSym, None).unwrap();
    let e = dirichlet_energy(&op, x).unwrap();
    assert!((e - edge_sum(&g, &scaled)).abs() < 1e-10);
}

#[test]
fn labels_on_heterophilic_graph_are_rough() {
    let g = BlockModel::heterophilic(30).sample(&mut ChaCha8Rng::seed_from_u64(1));
    let h = BlockModel::homophilic(30).sample(&mut ChaCha8Rng::seed_from_u64(1));
    let het = smoothness_report(&g, OperatorKind::LSym, FeatureMode::Raw).unwrap();
    let hom = smoothness_report(&h, OperatorKind::LSym, FeatureMode::Raw).unwrap();
    assert!(het.label_s > hom.label_s + 0.3);
}

#[test]
fn report_rejects_non_laplacian() {
    let g = graph(0, 6);
    assert_eq!(smoothness_report(&g, OperatorKind::HatASym, FeatureMode::Raw).unwrap_err().code(), "not_laplacian");
}

#[test]
fn rownorm_mode_matches_manual_normalization() {
    let g = graph(4, 10).row_normalized();
    let r = smoothness_report(&g, OperatorKind::LSym, FeatureMode::Raw).unwrap();
    let op = build_operator(&g, OperatorKind::LSym, None).unwrap();
    assert_eq!(r.feature_s, s_value(&op, g.features()).unwrap());
    let y = one_hot(g.labels(), g.n_classes()).unwrap();
    assert_eq!(r.label_s, s_value(&op, &y).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_decomposes(seed in 0u64..10_000, n in 2usize..30, k in 0usize..5) {
        let g = graph(seed, n);
        let op = build_operator(&g, LAPLACIANS[k], None).unwrap();
        let e = Energies::compute(&op, g.features()).unwrap();
        prop_assert!((e.e_s + e.e_ns - e.e).abs() <= 1e-12 * e.e.max(1.0));
        prop_assert!(e.e_s >= -1e-12);
    }

    #[test]
    fn s_value_is_scale_invariant(seed in 0u64..10_000, n in 2usize..30, c in prop_oneof![-1e3f64..-1e-3, 1e-3f64..1e3]) {
        let g = graph(seed, n);
        let op = build_operator(&g, OperatorKind::LSym, None).unwrap();
        let a = s_value(&op, g.features()).unwrap();
        let b = s_value(&op, &g.features().scaled(c)).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn s_value_is_permutation_invariant(seed in 0u64..10_000, n in 2usize..30, k in 0usize..5) {
        let g = graph(seed, n);
        let mut perm: Vec<usize> = (0..n).rev().collect();
        perm.rotate_left(seed as usize % n);
        let gp = g.permuted(&perm).unwrap();
        let a = s_value(&build_operator(&g, LAPLACIANS[k], None).unwrap(), g.features()).unwrap();
        let b = s_value(&build_operator(&gp, LAPLACIANS[k], None).unwrap(), gp.features()).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn normalized_s_value_is_bounded(seed in 0u64..10_000, n in 2usize..30) {
        let g = graph(seed, n);
        let s = s_value(&build_operator(&g, OperatorKind::HatLSym, None).unwrap(), g.features()).unwrap();
        prop_assert!((-1e-12..2.0).contains(&s));
    }
}
