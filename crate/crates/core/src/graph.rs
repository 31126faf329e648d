//! Graph representation, dataset file ingestion, adjacency normalization and
//! degree statistics.
//!
//! A graph is an undirected, unweighted, self-loop-free adjacency (stored as
//! a sorted set of `(i, j)` pairs with `i < j`), node features, integer class
//! labels, and train/val/test splits. Dense views are materialized on demand;
//! datasets here stay well under dense-SVD limits.
//!
//! File formats:
//! - `edges.tsv`: one undirected edge per line, two whitespace-separated
//!   0-based node ids; `#` starts a comment.
//! - `features.csv`: row i holds comma-separated floats for node i.
//! - `labels.txt`: line i holds the integer label of node i.
//! - `splits.json`: `{"train": [...], "val": [...], "test": [...]}`.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Csr, Mat};
use crate::rng;
use rand::Rng;

/// Adjacency normalization used by GCN aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormScheme {
    /// `I + D^{-1/2} A D^{-1/2}`
    FirstOrderGcn,
    /// `(D+I)^{-1/2} A (D+I)^{-1/2}`
    AugNormAdj,
}

impl NormScheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormScheme::FirstOrderGcn => "first-order-gcn",
            NormScheme::AugNormAdj => "aug-norm-adj",
        }
    }
}

impl std::str::FromStr for NormScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-order-gcn" => Ok(NormScheme::FirstOrderGcn),
            "aug-norm-adj" => Ok(NormScheme::AugNormAdj),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization scheme '{other}'"
            ))),
        }
    }
}

/// Train/val/test node index lists. Any list may be empty; lists are disjoint.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Splits {
    pub train: Vec<usize>,
    pub val: Vec<usize>,
    pub test: Vec<usize>,
}

/// Undirected unweighted graph with node features, labels and splits.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    /// Sorted unordered pairs (i, j) with i < j. No duplicates, no self loops.
    edges: Vec<(u32, u32)>,
    features: Mat,
    labels: Vec<usize>,
    num_classes: usize,
    splits: Splits,
}

impl Graph {
    /// Builds a graph from parts, symmetrizing and deduplicating the edge
    /// list and dropping self loops. Validates splits and label range.
    pub fn new(
        edges: Vec<(u32, u32)>,
        features: Mat,
        labels: Vec<usize>,
        splits: Splits,
    ) -> Result<Graph> {
        let n = features.rows();
        if labels.len() != n {
            return Err(Error::Dimension {
                expected: format!("{n} labels"),
                got: format!("{}", labels.len()),
                context: "one label per feature row".into(),
            });
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::NodeOutOfRange {
                    index: a.max(b) as usize,
                    n,
                    context: "edge endpoint".into(),
                });
            }
            if a == b {
                continue; // self loops dropped
            }
            set.insert((a.min(b), a.max(b)));
        }
        let num_classes = labels.iter().max().map_or(0, |m| m + 1);
        let graph = Graph {
            n,
            edges: set.into_iter().collect(),
            features,
            labels,
            num_classes,
            splits: Splits::default(),
        };
        graph.with_splits(splits)
    }

    /// Replaces the splits after validating bounds and disjointness.
    pub fn with_splits(mut self, splits: Splits) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        for (name, list) in [
            ("train", &splits.train),
            ("val", &splits.val),
            ("test", &splits.test),
        ] {
            for &idx in list {
                if idx >= self.n {
                    return Err(Error::NodeOutOfRange {
                        index: idx,
                        n: self.n,
                        context: format!("{name} split"),
                    });
                }
                if seen[idx] {
                    return Err(Error::Validation(format!(
                        "node {idx} appears in more than one split (or twice in `{name}`)"
                    )));
                }
                seen[idx] = true;
            }
        }
        self.splits = splits;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges |ℰ|.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted unordered edge pairs, each with `i < j`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn features(&self) -> &Mat {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn splits(&self) -> &Splits {
        &self.splits
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            d[a as usize] += 1;
            d[b as usize] += 1;
        }
        d
    }

    /// Dense symmetric 0/1 adjacency with zero diagonal.
    pub fn dense_adjacency(&self) -> Mat {
        let mut a = Mat::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            a.set(i as usize, j as usize, 1.0);
            a.set(j as usize, i as usize, 1.0);
        }
        a
    }

    /// Maximum possible undirected edge count n(n-1)/2.
    pub fn max_edges(&self) -> usize {
        self.n * (self.n.saturating_sub(1)) / 2
    }
}

/// Normalized adjacency Ã, kept sparse; symmetric within 1e-12.
#[derive(Debug, Clone)]
pub struct NormalizedAdjacency {
    pub scheme: NormScheme,
    matrix: Csr,
}

impl NormalizedAdjacency {
    pub fn matrix(&self) -> &Csr {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn to_dense(&self) -> Mat {
        self.matrix.to_dense()
    }
}

/// Normalizes an edge set under the given scheme. Degree-0 terms are defined
/// as 0; first-order-gcn keeps its identity diagonal regardless of degree.
pub fn normalize_edges(n: usize, edges: &[(u32, u32)], scheme: NormScheme) -> NormalizedAdjacency {
    let mut deg = vec![0.0f64; n];
    for &(a, b) in edges {
        deg[a as usize] += 1.0;
        deg[b as usize] += 1.0;
    }
    let inv_sqrt: Vec<f64> = match scheme {
        NormScheme::FirstOrderGcn => deg
            .iter()
            .map(|&d| if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 })
            .collect(),
        NormScheme::AugNormAdj => deg.iter().map(|&d| 1.0 / (d + 1.0).sqrt()).collect(),
    };
    let mut triplets = Vec::with_capacity(edges.len() * 2 + n);
    for &(a, b) in edges {
        let v = inv_sqrt[a as usize] * inv_sqrt[b as usize];
        triplets.push((a, b, v));
        triplets.push((b, a, v));
    }
    if scheme == NormScheme::FirstOrderGcn {
        for i in 0..n {
            triplets.push((i as u32, i as u32, 1.0));
        }
    }
    NormalizedAdjacency {
        scheme,
        matrix: Csr::from_triplets(n, n, triplets),
    }
}

/// Normalizes a graph's adjacency.
pub fn normalize(graph: &Graph, scheme: NormScheme) -> NormalizedAdjacency {
    normalize_edges(graph.n(), graph.edges(), scheme)
}

/// Per-node degrees plus the low/high partition at the given thresholds.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub low_threshold: usize,
    pub high_threshold: usize,
    /// Nodes with degree ≤ low_threshold.
    pub low_nodes: Vec<usize>,
    /// Nodes with degree ≥ high_threshold.
    pub high_nodes: Vec<usize>,
}

/// Partitions nodes into low-degree (degree ≤ d_low) and high-degree
/// (degree ≥ d_high) sets. Requires d_low < d_high; with d_high = d_low + 1
/// the two sets partition the nodes.
pub fn degree_stats(graph: &Graph, d_low: usize, d_high: usize) -> Result<DegreeStats> {
    if d_low >= d_high {
        return Err(Error::InvalidArgument(format!(
            "d_low ({d_low}) must be below d_high ({d_high})"
        )));
    }
    let degrees = graph.degrees();
    let low_nodes = (0..graph.n()).filter(|&i| degrees[i] <= d_low).collect();
    let high_nodes = (0..graph.n()).filter(|&i| degrees[i] >= d_high).collect();
    Ok(DegreeStats {
        degrees,
        low_threshold: d_low,
        high_threshold: d_high,
        low_nodes,
        high_nodes,
    })
}

/// Erdős–Rényi graph with Gaussian features, uniform labels and a 60/20/20
/// split. Deterministic per seed.
pub fn generate_synthetic(
    n: usize,
    edge_prob: f64,
    d: usize,
    num_classes: usize,
    seed: u64,
) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 nodes".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidArgument("edge_prob must be in [0, 1]".into()));
    }
    if num_classes == 0 {
        return Err(Error::InvalidArgument("need at least one class".into()));
    }

    let mut edge_rng = rng::stream(seed, "synthetic/edges");
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if edge_rng.gen::<f64>() < edge_prob {
                edges.push((i, j));
            }
        }
    }

    let mut feat_rng = rng::stream(seed, "synthetic/features");
    let mut features = Mat::zeros(n, d);
    for v in features.as_mut_slice() {
        *v = rng::sample_gaussian(&mut feat_rng, 1.0);
    }

    let mut label_rng = rng::stream(seed, "synthetic/labels");
    let mut labels: Vec<usize> = (0..n).map(|_| label_rng.gen_range(0..num_classes)).collect();
    // Every class id below num_classes must occur so that C is stable.
    for c in 0..num_classes.min(n) {
        labels[c] = c;
    }

    let mut split_rng = rng::stream(seed, "synthetic/split");
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = split_rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let n_train = (n as f64 * 0.6).floor() as usize;
    let n_val = (n as f64 * 0.2).floor() as usize;
    let splits = Splits {
        train: order[..n_train].to_vec(),
        val: order[n_train..n_train + n_val].to_vec(),
        test: order[n_train + n_val..].to_vec(),
    };

    Graph::new(edges, features, labels, splits)
}

/// Loads a graph from the four dataset files.
pub fn load_graph(
    edge_file: &Path,
    feature_file: &Path,
    label_file: &Path,
    split_file: &Path,
) -> Result<Graph> {
    let features = read_features(feature_file)?;
    let n = features.rows();
    let edges = read_edges(edge_file, n)?;
    let labels = read_labels(label_file, n)?;
    let splits = read_splits(split_file)?;
    Graph::new(edges, features, labels, splits)
}

/// Loads a graph from a directory holding `edges.tsv`, `features.csv`,
/// `labels.txt` and `splits.json`.
pub fn load_graph_dir(dir: &Path) -> Result<Graph> {
    load_graph(
        &dir.join("edges.tsv"),
        &dir.join("features.csv"),
        &dir.join("labels.txt"),
        &dir.join("splits.json"),
    )
}

/// Writes the four dataset files into `dir`.
pub fn save_graph_dir(graph: &Graph, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    save_edges(graph.edges(), &dir.join("edges.tsv"))?;

    let fpath = dir.join("features.csv");
    let mut out = String::new();
    for i in 0..graph.n() {
        let row: Vec<String> = graph.features().row(i).iter().map(f64::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(&fpath, out).map_err(|e| Error::io(&fpath, e))?;

    let lpath = dir.join("labels.txt");
    let mut out = String::new();
    for &l in graph.labels() {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    fs::write(&lpath, out).map_err(|e| Error::io(&lpath, e))?;

    let spath = dir.join("splits.json");
    let json = serde_json::to_string_pretty(graph.splits())?;
    fs::write(&spath, json).map_err(|e| Error::io(&spath, e))?;
    Ok(())
}

/// Writes an edge list in `edges.tsv` format.
pub fn save_edges(edges: &[(u32, u32)], path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    for &(a, b) in edges {
        writeln!(buf, "{a}\t{b}").expect("writing to memory");
    }
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

fn read_edges(path: &Path, n: usize) -> Result<Vec<(u32, u32)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let a = parse_field::<u32>(parts.next(), path, lineno + 1, "source node id")?;
        let b = parse_field::<u32>(parts.next(), path, lineno + 1, "target node id")?;
        if parts.next().is_some() {
            return Err(Error::parse(path, lineno + 1, "expected exactly two node ids"));
        }
        if a as usize >= n || b as usize >= n {
            return Err(Error::NodeOutOfRange {
                index: a.max(b) as usize,
                n,
                context: format!("{} line {}", path.display(), lineno + 1),
            });
        }
        edges.push((a, b));
    }
    Ok(edges)
}

fn read_features(path: &Path) -> Result<Mat> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::parse(path, lineno + 1, format!("bad float '{}'", tok.trim()))
                })
            })
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::parse(
                    path,
                    lineno + 1,
                    format!("row has {} values, expected {w}", row.len()),
                ));
            }
            _ => {}
        }
        rows.push(row);
    }
    let cols = width.unwrap_or(0);
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in &rows {
        data.extend_from_slice(row);
    }
    Ok(Mat::from_vec(rows.len(), cols, data))
}

fn read_labels(path: &Path, n: usize) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut labels = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let l: usize = line
            .parse()
            .map_err(|_| Error::parse(path, lineno + 1, format!("bad label '{line}'")))?;
        labels.push(l);
    }
    if labels.len() != n {
        return Err(Error::Dimension {
            expected: format!("{n} labels"),
            got: format!("{}", labels.len()),
            context: path.display().to_string(),
        });
    }
    Ok(labels)
}

fn read_splits(path: &Path) -> Result<Splits> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_field<T: std::str::FromStr>(
    tok: Option<&str>,
    path: &Path,
    line: usize,
    what: &str,
) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(path, line, format!("missing {what}")))?;
    tok.parse::<T>()
        .map_err(|_| Error::parse(path, line, format!("bad {what} '{tok}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_features(n: usize, d: usize) -> Mat {
        let data: Vec<f64> = (0..n * d).map(|x| x as f64).collect();
        Mat::from_vec(n, d, data)
    }

    #[test]
    fn symmetrization_and_dedup() {
        let g = Graph::new(
            vec![(0, 1), (1, 0), (0, 1)],
            tiny_features(3, 2),
            vec![0, 0, 1],
            Splits::default(),
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
        assert_eq!(g.dense_adjacency().get(1, 0), 1.0);
    }

    #[test]
    fn self_loops_dropped() {
        let g = Graph::new(
            vec![(0, 0)],
            tiny_features(3, 2),
            vec![0, 0, 1],
            Splits::default(),
        )
        .unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edge_out_of_range_rejected() {
        let err = Graph::new(
            vec![(0, 7)],
            tiny_features(3, 2),
            vec![0, 0, 1],
            Splits::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NodeOutOfRange { .. }));
    }

    #[test]
    fn duplicate_split_node_rejected() {
        let err = Graph::new(
            vec![(0, 1)],
            tiny_features(3, 2),
            vec![0, 0, 1],
            Splits {
                train: vec![0],
                val: vec![0],
                test: vec![],
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn aug_norm_adj_two_nodes() {
        // One edge, D+I = diag(2,2): off-diagonal 1/2.
        let g = Graph::new(
            vec![(0, 1)],
            tiny_features(2, 1),
            vec![0, 1],
            Splits::default(),
        )
        .unwrap();
        let norm = normalize(&g, NormScheme::AugNormAdj).to_dense();
        let want = Mat::from_rows(&[&[0.0, 0.5], &[0.5, 0.0]]);
        assert!(norm.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn first_order_two_nodes() {
        let g = Graph::new(
            vec![(0, 1)],
            tiny_features(2, 1),
            vec![0, 1],
            Splits::default(),
        )
        .unwrap();
        let norm = normalize(&g, NormScheme::FirstOrderGcn).to_dense();
        let want = Mat::from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(norm.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn empty_graph_first_order_is_identity() {
        let g = Graph::new(vec![], tiny_features(4, 2), vec![0; 4], Splits::default()).unwrap();
        let norm = normalize(&g, NormScheme::FirstOrderGcn).to_dense();
        assert!(norm.max_abs_diff(&Mat::identity(4)) < 1e-15);
    }

    #[test]
    fn normalized_matrices_symmetric() {
        let g = generate_synthetic(40, 0.15, 3, 2, 9).unwrap();
        for scheme in [NormScheme::FirstOrderGcn, NormScheme::AugNormAdj] {
            assert!(normalize(&g, scheme).to_dense().is_symmetric(1e-12));
        }
    }

    #[test]
    fn degree_stats_star_graph() {
        // K_{1,5}: hub degree 5, leaves degree 1.
        let edges = (1..=5).map(|i| (0u32, i as u32)).collect();
        let g = Graph::new(edges, tiny_features(6, 2), vec![0; 6], Splits::default()).unwrap();
        let stats = degree_stats(&g, 1, 2).unwrap();
        assert_eq!(stats.low_nodes.len(), 5);
        assert_eq!(stats.high_nodes, vec![0]);
    }

    #[test]
    fn degree_stats_empty_graph() {
        let g = Graph::new(vec![], tiny_features(4, 1), vec![0; 4], Splits::default()).unwrap();
        let stats = degree_stats(&g, 3, 4).unwrap();
        assert_eq!(stats.low_nodes.len(), 4);
        assert!(stats.high_nodes.is_empty());
    }

    #[test]
    fn degree_stats_contiguous_partition_sums() {
        let g = generate_synthetic(50, 0.1, 2, 2, 4).unwrap();
        let stats = degree_stats(&g, 3, 4).unwrap();
        assert_eq!(stats.low_nodes.len() + stats.high_nodes.len(), 50);
    }

    #[test]
    fn degree_stats_bad_thresholds() {
        let g = generate_synthetic(5, 0.5, 2, 2, 1).unwrap();
        assert!(degree_stats(&g, 4, 4).is_err());
    }

    #[test]
    fn synthetic_complete_and_empty() {
        let g = generate_synthetic(4, 1.0, 2, 2, 1).unwrap();
        assert_eq!(g.edge_count(), 6);
        let g = generate_synthetic(10, 0.0, 2, 2, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn synthetic_deterministic() {
        let a = generate_synthetic(20, 0.3, 4, 3, 7).unwrap();
        let b = generate_synthetic(20, 0.3, 4, 3, 7).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.labels(), b.labels());
        assert_eq!(a.features().as_slice(), b.features().as_slice());
        assert_eq!(a.splits().train, b.splits().train);
    }

    #[test]
    fn synthetic_split_partition() {
        let g = generate_synthetic(25, 0.2, 2, 2, 3).unwrap();
        let s = g.splits();
        assert_eq!(s.train.len(), 15);
        assert_eq!(s.val.len(), 5);
        assert_eq!(s.test.len(), 5);
    }

    #[test]
    fn load_save_roundtrip_preserves_edges() {
        let dir = tempfile::tempdir().unwrap();
        let g = generate_synthetic(15, 0.25, 3, 2, 11).unwrap();
        save_graph_dir(&g, dir.path()).unwrap();
        let re = load_graph_dir(dir.path()).unwrap();
        assert_eq!(g.edges(), re.edges());
        assert_eq!(g.labels(), re.labels());
        assert_eq!(g.splits().train, re.splits().train);
        // And once more: serialize → load is idempotent.
        let dir2 = tempfile::tempdir().unwrap();
        save_graph_dir(&re, dir2.path()).unwrap();
        let re2 = load_graph_dir(dir2.path()).unwrap();
        assert_eq!(re.edges(), re2.edges());
    }

    #[test]
    fn malformed_edge_line_reports_lineno() {
        let dir = tempfile::tempdir().unwrap();
        let g = generate_synthetic(5, 0.3, 2, 2, 2).unwrap();
        save_graph_dir(&g, dir.path()).unwrap();
        fs::write(dir.path().join("edges.tsv"), "0 1\n2 x\n").unwrap();
        let err = load_graph_dir(dir.path()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_ok() {
        let dir = tempfile::tempdir().unwrap();
        let g = generate_synthetic(5, 0.0, 2, 2, 2).unwrap();
        save_graph_dir(&g, dir.path()).unwrap();
        fs::write(dir.path().join("edges.tsv"), "# header\n\n0 1 # trailing\n").unwrap();
        let re = load_graph_dir(dir.path()).unwrap();
        assert_eq!(re.edge_count(), 1);
    }
}
