//! Graph datasets: validated undirected graphs with node features and
//! labels, raw-file import, the canonical on-disk layout, and
//! train/validation/test splits.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::io;
use crate::sparse::CsrMatrix;

/// Immutable undirected graph. Adjacency is stored as a symmetric CSR
/// pattern without self-loops or duplicate edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n_nodes: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    degrees: Vec<usize>,
    features: DenseMatrix,
    labels: Vec<usize>,
    n_classes: usize,
}

/// Counts of edge lines that did not become stored edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCleanup {
    pub input_edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl Graph {
    /// Builds a graph from a possibly directed, possibly redundant edge list.
    pub fn from_edges(
        n_nodes: usize,
        edges: &[(usize, usize)],
        features: DenseMatrix,
        labels: Vec<usize>,
        n_classes: usize,
    ) -> Result<(Graph, EdgeCleanup)> {
        if features.rows() != n_nodes {
            return Err(Error::DimensionMismatch(format!(
                "feature matrix has {} rows for {n_nodes} nodes",
                features.rows()
            )));
        }
        if labels.len() != n_nodes {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {n_nodes} nodes",
                labels.len()
            )));
        }
        if let Some((node, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= n_classes) {
            return Err(Error::LabelOutOfRange { node, label: label as i64, n_classes });
        }
        let mut cleanup = EdgeCleanup { input_edges: edges.len(), ..Default::default() };
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
        for &(a, b) in edges {
            if a >= n_nodes || b >= n_nodes {
                return Err(Error::DimensionMismatch(format!(
                    "edge ({a}, {b}) references a node outside 0..{n_nodes}"
                )));
            }
            if a == b {
                cleanup.self_loops_dropped += 1;
                continue;
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                cleanup.duplicates_dropped += 1;
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if seen.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let mut indptr = Vec::with_capacity(n_nodes + 1);
        let mut indices = Vec::with_capacity(2 * seen.len());
        let mut degrees = Vec::with_capacity(n_nodes);
        indptr.push(0);
        for mut nbrs in adj {
            nbrs.sort_unstable();
            degrees.push(nbrs.len());
            indices.extend(nbrs);
            indptr.push(indices.len());
        }
        let g = Graph { n_nodes, indptr, indices, degrees, features, labels, n_classes };
        Ok((g, cleanup))
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Number of undirected edges.
    pub fn n_edges(&self) -> usize {
        self.indices.len() / 2
    }

    pub fn n_features(&self) -> usize {
        self.features.cols()
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.indices[self.indptr[i]..self.indptr[i + 1]]
    }

    pub fn csr_offsets(&self) -> &[usize] {
        &self.indptr
    }

    pub fn csr_indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn features(&self) -> &DenseMatrix {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Undirected edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_nodes)
            .flat_map(move |i| self.neighbors(i).iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency(&self) -> CsrMatrix {
        CsrMatrix::from_parts(
            self.n_nodes,
            self.n_nodes,
            self.indptr.clone(),
            self.indices.clone(),
            vec![1.0; self.indices.len()],
        )
    }

    pub fn first_isolated_node(&self) -> Option<usize> {
        self.degrees.iter().position(|&d| d == 0)
    }

    /// Same graph with features replaced (row count must match).
    pub fn with_features(&self, features: DenseMatrix) -> Result<Graph> {
        if features.rows() != self.n_nodes {
            return Err(Error::DimensionMismatch("feature rows".into()));
        }
        Ok(Graph { features, ..self.clone() })
    }

    pub fn row_normalized(&self) -> Graph {
        Graph { features: self.features.row_normalized(), ..self.clone() }
    }

    /// Relabels nodes so that new node `i` is old node `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n_nodes;
        if perm.len() != n {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (new, &old) in perm.iter().enumerate() {
            if old >= n || inv[old] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            inv[old] = new;
        }
        let edges: Vec<_> = self.edges().map(|(a, b)| (inv[a], inv[b])).collect();
        let labels = perm.iter().map(|&old| self.labels[old]).collect();
        let (g, _) = Graph::from_edges(
            n,
            &edges,
            self.features.gather_rows(perm),
            labels,
            self.n_classes,
        )?;
        Ok(g)
    }

    /// Number of nodes reachable from node 0 equals `n_nodes`.
    pub fn is_connected(&self) -> bool {
        if self.n_nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.n_nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n_nodes
    }

    /// BFS 2-coloring over every component.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n_nodes];
        for start in 0..self.n_nodes {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Raw import

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ImportOptions {
    /// Divide each feature row by its sum after parsing.
    pub row_normalize: bool,
    /// Declared class count; inferred as `max(label) + 1` when absent.
    pub n_classes: Option<usize>,
}

fn is_header(line: &str) -> bool {
    line.split_whitespace()
        .next()
        .is_some_and(|tok| tok.parse::<i64>().is_err())
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut first = true;
    text.lines().enumerate().filter_map(move |(i, l)| {
        let l = l.trim();
        if l.is_empty() {
            return None;
        }
        if std::mem::take(&mut first) && is_header(l) {
            return None;
        }
        Some((i + 1, l))
    })
}

/// Parses a node file (`id<TAB>f1,f2,...<TAB>label`) and an edge file
/// (`src<TAB>dst`) into a validated graph. A leading non-numeric header
/// line in either file is skipped.
pub fn import_raw(
    node_path: &Path,
    edge_path: &Path,
    options: &ImportOptions,
) -> Result<(Graph, EdgeCleanup)> {
    let node_text = io::read_to_string(node_path)?;
    let edge_text = io::read_to_string(edge_path)?;
    import_raw_str(&node_text, &edge_text, options)
}

pub fn import_raw_str(
    node_text: &str,
    edge_text: &str,
    options: &ImportOptions,
) -> Result<(Graph, EdgeCleanup)> {
    let parse_err = |file: &str, line: usize, msg: String| Error::Parse {
        file: file.to_string(),
        line,
        msg,
    };

    let mut rows: Vec<(i64, Vec<f64>, i64)> = Vec::new();
    for (lineno, line) in data_lines(node_text) {
        let fields: Vec<&str> = line.split('\t').collect();
        let fields: Vec<&str> = if fields.len() == 3 {
            fields
        } else {
            line.split_whitespace().collect()
        };
        if fields.len() != 3 {
            return Err(parse_err("nodes", lineno, format!("expected 3 fields, got {}", fields.len())));
        }
        let id: i64 = fields[0]
            .trim()
            .parse()
            .map_err(|_| parse_err("nodes", lineno, format!("bad node id '{}'", fields[0])))?;
        let feats = fields[1]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err("nodes", lineno, format!("bad feature value: {e}")))?;
        let label: i64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| parse_err("nodes", lineno, format!("bad label '{}'", fields[2])))?;
        rows.push((id, feats, label));
    }

    let n = rows.len();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    for (r, (id, _, _)) in rows.iter().enumerate() {
        let ok = *id >= 0 && (*id as usize) < n;
        if !ok {
            return Err(Error::NonContiguousIds { n, detail: format!("id {id} out of range") });
        }
        if slot[*id as usize].replace(r).is_some() {
            return Err(Error::NonContiguousIds { n, detail: format!("id {id} repeated") });
        }
    }

    let n_features = rows.first().map_or(0, |r| r.1.len());
    let max_label = rows.iter().map(|r| r.2).max().unwrap_or(-1);
    let n_classes = options.n_classes.unwrap_or((max_label + 1).max(0) as usize);
    let mut data = Vec::with_capacity(n * n_features);
    let mut labels = Vec::with_capacity(n);
    for (node, r) in slot.iter().enumerate() {
        let (_, feats, label) = &rows[r.expect("every slot filled")];
        if feats.len() != n_features {
            return Err(Error::RaggedFeatures { node, got: feats.len(), expected: n_features });
        }
        if *label < 0 || *label as usize >= n_classes {
            return Err(Error::LabelOutOfRange { node, label: *label, n_classes });
        }
        data.extend_from_slice(feats);
        labels.push(*label as usize);
    }
    let mut features = DenseMatrix::from_vec(n, n_features, data)?;
    if options.row_normalize {
        features = features.row_normalized();
    }

    let mut edges = Vec::new();
    for (lineno, line) in data_lines(edge_text) {
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(parse_err("edges", lineno, "expected 2 fields".into())),
        };
        let a: usize = a
            .parse()
            .map_err(|_| parse_err("edges", lineno, format!("bad node id '{a}'")))?;
        let b: usize = b
            .parse()
            .map_err(|_| parse_err("edges", lineno, format!("bad node id '{b}'")))?;
        if a >= n || b >= n {
            return Err(parse_err("edges", lineno, format!("edge ({a}, {b}) outside 0..{n}")));
        }
        edges.push((a, b));
    }

    let (g, cleanup) = Graph::from_edges(n, &edges, features, labels, n_classes)?;
    if cleanup.self_loops_dropped + cleanup.duplicates_dropped > 0 {
        log::warn!(
            "dropped {} self-loops and {} duplicate edges",
            cleanup.self_loops_dropped,
            cleanup.duplicates_dropped
        );
    }
    Ok((g, cleanup))
}

// ---------------------------------------------------------------------------
// Canonical layout

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub n_nodes: usize,
    pub n_features: usize,
    pub n_classes: usize,
}

/// Writes `meta.json`, `edges.tsv`, `features.tsv` and `labels.tsv`.
/// Floats use the shortest representation that parses back exactly.
pub fn save_canonical(graph: &Graph, dir: &Path) -> Result<()> {
    let meta = DatasetMeta {
        n_nodes: graph.n_nodes(),
        n_features: graph.n_features(),
        n_classes: graph.n_classes(),
    };
    let mut edges = String::new();
    for (a, b) in graph.edges() {
        let _ = writeln!(edges, "{a}\t{b}");
    }
    let mut features = String::new();
    for i in 0..graph.n_nodes() {
        for (j, v) in graph.features().row(i).iter().enumerate() {
            if j > 0 {
                features.push('\t');
            }
            let _ = write!(features, "{v}");
        }
        features.push('\n');
    }
    let mut labels = String::new();
    for l in graph.labels() {
        let _ = writeln!(labels, "{l}");
    }
    io::write_atomic(&dir.join("edges.tsv"), edges.as_bytes())?;
    io::write_atomic(&dir.join("features.tsv"), features.as_bytes())?;
    io::write_atomic(&dir.join("labels.tsv"), labels.as_bytes())?;
    io::write_json(&dir.join("meta.json"), &meta)
}

pub fn load_canonical(dir: &Path) -> Result<Graph> {
    let need = |name: &'static str, what: &'static str| -> Result<String> {
        let p = dir.join(name);
        if !p.is_file() {
            return Err(Error::MissingFile(what));
        }
        io::read_to_string(&p)
    };
    let meta: DatasetMeta = serde_json::from_str(&need("meta.json", "meta")?)?;
    let edges_text = need("edges.tsv", "edges")?;
    let features_text = need("features.tsv", "features")?;
    let labels_text = need("labels.tsv", "labels")?;

    let bad = |file: &str, line: usize, msg: String| Error::Parse { file: file.into(), line, msg };

    let mut labels = Vec::with_capacity(meta.n_nodes);
    for (i, l) in labels_text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        labels.push(l.trim().parse::<usize>().map_err(|e| bad("labels.tsv", i + 1, e.to_string()))?);
    }
    if labels.len() != meta.n_nodes {
        return Err(Error::MetaMismatch(format!(
            "labels.tsv has {} rows, meta says {} nodes",
            labels.len(),
            meta.n_nodes
        )));
    }

    let mut data = Vec::with_capacity(meta.n_nodes * meta.n_features);
    let mut rows = 0;
    for (i, line) in features_text.lines().enumerate() {
        if rows == meta.n_nodes && line.is_empty() {
            continue;
        }
        let before = data.len();
        if !line.is_empty() {
            for tok in line.split('\t') {
                data.push(tok.parse::<f64>().map_err(|e| bad("features.tsv", i + 1, e.to_string()))?);
            }
        }
        if data.len() - before != meta.n_features {
            return Err(Error::MetaMismatch(format!(
                "features.tsv line {} has {} values, meta says {}",
                i + 1,
                data.len() - before,
                meta.n_features
            )));
        }
        rows += 1;
    }
    if rows != meta.n_nodes {
        return Err(Error::MetaMismatch(format!(
            "features.tsv has {rows} rows, meta says {} nodes",
            meta.n_nodes
        )));
    }

    let mut edges = Vec::new();
    for (i, line) in edges_text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let mut it = line.split('\t');
        let parse = |s: Option<&str>| -> Result<usize> {
            s.ok_or_else(|| bad("edges.tsv", i + 1, "expected 2 fields".into()))?
                .trim()
                .parse::<usize>()
                .map_err(|e| bad("edges.tsv", i + 1, e.to_string()))
        };
        let (a, b) = (parse(it.next())?, parse(it.next())?);
        if a >= meta.n_nodes || b >= meta.n_nodes {
            return Err(Error::MetaMismatch(format!("edge ({a}, {b}) outside 0..{}", meta.n_nodes)));
        }
        edges.push((a, b));
    }
    let features = DenseMatrix::from_vec(meta.n_nodes, meta.n_features, data)?;
    let (g, _) = Graph::from_edges(meta.n_nodes, &edges, features, labels, meta.n_classes)?;
    Ok(g)
}

// ---------------------------------------------------------------------------
// Splits

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub val: Vec<usize>,
    pub test: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSet {
    pub seed: u64,
    pub ratios: [f64; 3],
    pub splits: Vec<Split>,
}

/// Sizes under the floor-then-remainder rule: train and validation are
/// floored, the test set receives what is left.
pub fn split_sizes(n: usize, ratios: [f64; 3]) -> (usize, usize, usize) {
    let train = (n as f64 * ratios[0]).floor() as usize;
    let val = (n as f64 * ratios[1]).floor() as usize;
    (train, val, n - train - val)
}

impl SplitSet {
    /// `count` independent uniform random permutations of `0..n_nodes`, cut
    /// by [`split_sizes`]. Pure in its arguments.
    pub fn generate(n_nodes: usize, ratios: [f64; 3], seed: u64, count: usize) -> Result<SplitSet> {
        let total: f64 = ratios.iter().sum();
        if (total - 1.0).abs() > 1e-9 || ratios.iter().any(|r| *r < 0.0) {
            return Err(Error::InvalidRatios(total));
        }
        if count == 0 {
            return Err(Error::ZeroSplitCount);
        }
        let (n_train, n_val, _) = split_sizes(n_nodes, ratios);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let splits = (0..count)
            .map(|_| {
                let mut perm: Vec<usize> = (0..n_nodes).collect();
                perm.shuffle(&mut rng);
                let mut train = perm[..n_train].to_vec();
                let mut val = perm[n_train..n_train + n_val].to_vec();
                let mut test = perm[n_train + n_val..].to_vec();
                train.sort_unstable();
                val.sort_unstable();
                test.sort_unstable();
                Split { train, val, test }
            })
            .collect();
        Ok(SplitSet { seed, ratios, splits })
    }

    /// Checks that every split partitions `0..n_nodes`.
    pub fn validate(&self, n_nodes: usize) -> Result<()> {
        if self.splits.is_empty() {
            return Err(Error::ZeroSplitCount);
        }
        for (k, s) in self.splits.iter().enumerate() {
            let mut seen = vec![false; n_nodes];
            for &i in s.train.iter().chain(&s.val).chain(&s.test) {
                if i >= n_nodes {
                    return Err(Error::InvalidSplit(format!("split {k}: index {i} >= {n_nodes}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidSplit(format!("split {k}: index {i} repeated")));
                }
            }
            if let Some(missing) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidSplit(format!("split {k}: node {missing} unassigned")));
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_json(path, self)
    }

    pub fn load(path: &Path) -> Result<SplitSet> {
        io::read_json(path)
    }
}

pub fn make_splits(graph: &Graph, ratios: [f64; 3], seed: u64, count: usize) -> Result<SplitSet> {
    SplitSet::generate(graph.n_nodes(), ratios, seed, count)
}

pub const DEFAULT_RATIOS: [f64; 3] = [0.48, 0.32, 0.20];
