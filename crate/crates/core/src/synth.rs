//! Random graph generators for tests, examples and the sweep commands.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dense::DenseMatrix;
use crate::graph::Graph;

/// G(n, p) edge list.
pub fn erdos_renyi_edges<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Resamples G(n, p) until the graph is connected and not bipartite.
/// Features are a single zero column; all labels are 0.
pub fn connected_non_bipartite<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(n >= 3, "a non-bipartite graph needs at least 3 nodes");
    loop {
        let edges = erdos_renyi_edges(n, p, rng);
        if edges.is_empty() {
            continue;
        }
        let (g, _) = Graph::from_edges(n, &edges, DenseMatrix::zeros(n, 1), vec![0; n], 1)
            .expect("valid edges");
        if g.is_connected() && !g.is_bipartite() {
            return g;
        }
    }
}

pub fn gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| StandardNormal.sample(rng)).collect();
    DenseMatrix::from_vec(rows, cols, data).expect("sized")
}

/// Connected random graph with Gaussian features and uniform labels, used by
/// gradient checks and property tests. Contains at least one edge per node.
pub fn random_attributed<R: Rng>(n: usize, n_features: usize, n_classes: usize, rng: &mut R) -> Graph {
    assert!(n >= 2);
    // Random spanning tree plus extra G(n, p) edges keeps every node attached.
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    edges.extend(erdos_renyi_edges(n, 2.0 / n as f64, rng));
    let features = gaussian_matrix(n, n_features, rng);
    let labels = (0..n).map(|_| rng.gen_range(0..n_classes)).collect();
    Graph::from_edges(n, &edges, features, labels, n_classes).expect("valid").0
}

/// Parameters of a contextual stochastic block model.
#[derive(Debug, Clone)]
pub struct BlockModel {
    pub nodes_per_class: usize,
    pub n_classes: usize,
    pub n_features: usize,
    /// Expected number of same-class neighbours per node.
    pub intra_degree: f64,
    /// Expected number of other-class neighbours per node.
    pub inter_degree: f64,
    /// Distance of the class means from the origin, in noise standard deviations.
    pub feature_signal: f64,
}

impl BlockModel {
    /// Mostly cross-class edges with informative node features: the regime
    /// where aggregation alone blurs the signal.
    pub fn heterophilic(nodes_per_class: usize) -> Self {
        BlockModel {
            nodes_per_class,
            n_classes: 3,
            n_features: 16,
            intra_degree: 0.5,
            inter_degree: 4.0,
            feature_signal: 1.0,
        }
    }

    /// Mostly same-class edges with noisy features.
    pub fn homophilic(nodes_per_class: usize) -> Self {
        BlockModel {
            nodes_per_class,
            n_classes: 3,
            n_features: 16,
            intra_degree: 5.0,
            inter_degree: 0.5,
            feature_signal: 0.6,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Graph {
        let n = self.nodes_per_class * self.n_classes;
        let labels: Vec<usize> = (0..n).map(|i| i / self.nodes_per_class).collect();
        let p_in = (self.intra_degree / (self.nodes_per_class as f64 - 1.0).max(1.0)).min(1.0);
        let p_out = (self.inter_degree / (n - self.nodes_per_class).max(1) as f64).min(1.0);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = if labels[i] == labels[j] { p_in } else { p_out };
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        // Give isolated nodes one random cross-class edge.
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        for i in 0..n {
            if deg[i] == 0 {
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                edges.push((i, j));
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        let means = gaussian_matrix(self.n_classes, self.n_features, rng);
        let mut features = gaussian_matrix(n, self.n_features, rng);
        for i in 0..n {
            let mu = means.row(labels[i]);
            let norm = mu.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
            for (x, m) in features.row_mut(i).iter_mut().zip(mu) {
                *x += self.feature_signal * m / norm * (self.n_features as f64).sqrt() / 2.0;
            }
        }
        Graph::from_edges(n, &edges, features, labels, self.n_classes).expect("valid").0
    }
}
