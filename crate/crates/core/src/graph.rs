//! Erdős–Rényi graph samples, unions, Laplacians and traversal connectivity.
//!
//! Nodes are indexed `0..n`. Admissible edges are the `n(n-1)/2` unordered
//! pairs `(i, j)` with `i < j`, enumerated in lexicographic order
//! `(0,1), (0,2), ..., (0,n-1), (1,2), ...`; that order defines both the
//! sampling order and the bitmask encoding used by the exact oracle.
//!
//! # Random streams
//!
//! All sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng`). A standalone sample
//! with seed `s` uses `ChaCha8Rng::seed_from_u64(s)` on stream 0. Trial `t` of
//! a Monte-Carlo run with master seed `m` uses `ChaCha8Rng::seed_from_u64(m)`
//! with its stream set to `t`, so every trial owns an independent,
//! reproducible stream no matter which thread evaluates it. Each admissible
//! pair consumes one `f64` draw in `[0, 1)`; the edge is present iff the draw
//! is `< p`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Parameters of the model `G(n, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModelParams")]
pub struct ModelParams {
    n: usize,
    p: f64,
}

#[derive(Deserialize)]
struct RawModelParams {
    n: usize,
    p: f64,
}

impl TryFrom<RawModelParams> for ModelParams {
    type Error = Error;

    fn try_from(raw: RawModelParams) -> Result<Self> {
        ModelParams::new(raw.n, raw.p)
    }
}

impl ModelParams {
    /// Requires `n >= 2` and `0 < p < 1`.
    pub fn new(n: usize, p: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in (0, 1), got {p}"
            )));
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `q = 1 - p`.
    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    /// Number of admissible edges, `n(n-1)/2`.
    pub fn pair_count(&self) -> usize {
        pair_count(self.n)
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Calls `f(index, i, j)` for every admissible pair in lexicographic order.
pub fn for_each_pair(n: usize, mut f: impl FnMut(usize, usize, usize)) {
    let mut idx = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            f(idx, i, j);
            idx += 1;
        }
    }
}

/// A simple undirected graph on nodes `0..n`.
///
/// Edges are stored once as `(i, j)` with `i < j`, sorted and free of
/// duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphSample {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSample {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(pair_count(n));
        for_each_pair(n, |_, i, j| edges.push((i, j)));
        Self { n, edges }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// Builds a graph from arbitrary pairs. Pairs are normalized to `i < j`
    /// and deduplicated; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop at node {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            n,
            edges: set.into_iter().collect(),
        })
    }

    /// Builds a graph from an inclusion mask over the lexicographic pairs.
    pub fn from_pair_mask(n: usize, mask: &[bool]) -> Self {
        assert_eq!(
            mask.len(),
            pair_count(n),
            "pair mask length must be n(n-1)/2"
        );
        let mut edges = Vec::new();
        for_each_pair(n, |idx, i, j| {
            if mask[idx] {
                edges.push((i, j));
            }
        });
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    pub fn adjacency(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        a
    }

    /// Serializes to the edge-list text format: a `n=<count>` header followed
    /// by one `i j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    /// Parses the edge-list text format. Blank lines are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n=<count>` header".into(),
        })?;
        let n = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: hline,
                message: format!("expected `n=<count>`, found `{header}`"),
            })?;
        let mut pairs = Vec::new();
        for (line, l) in lines {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => pairs.push((a, b)),
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected `i j`, found `{l}`"),
                    })
                }
            }
        }
        Self::from_edges(n, pairs)
    }
}

/// Graph Laplacian `L = D - A`.
///
/// Built from integer degrees, so every row sums to exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    matrix: Matrix,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }
}

/// Samples `G(n, p)` deterministically from `seed` (ChaCha8, stream 0).
pub fn sample_graph(params: ModelParams, seed: u64) -> GraphSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_graph_with(params, &mut rng)
}

/// Samples `G(n, p)` from an existing generator, one draw per admissible pair.
pub fn sample_graph_with<R: Rng + ?Sized>(params: ModelParams, rng: &mut R) -> GraphSample {
    let mut mask = vec![false; params.pair_count()];
    accumulate_sample(params, rng, &mut mask);
    GraphSample::from_pair_mask(params.n, &mask)
}

/// ORs one fresh `G(n, p)` sample into `mask`. Consumes exactly
/// `n(n-1)/2` draws, the same stream [`sample_graph_with`] would.
pub fn accumulate_sample<R: Rng + ?Sized>(params: ModelParams, rng: &mut R, mask: &mut [bool]) {
    debug_assert_eq!(mask.len(), params.pair_count());
    let p = params.p;
    for slot in mask.iter_mut() {
        let hit = rng.gen::<f64>() < p;
        *slot |= hit;
    }
}

/// Generator for trial `trial` of a run seeded with `master_seed`.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Union of graphs on a common node set: the set union of their edges.
pub fn union_graphs(samples: &[GraphSample]) -> Result<GraphSample> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InvalidParameter("union of an empty list of graphs".into()))?;
    let n = first.n;
    let mut set = BTreeSet::new();
    for g in samples {
        if g.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.n,
            });
        }
        set.extend(g.edges.iter().copied());
    }
    Ok(GraphSample {
        n,
        edges: set.into_iter().collect(),
    })
}

/// Laplacian of `g`; `L[i][j] = -1` iff `(i, j)` is an edge, `L[i][i] = deg(i)`.
pub fn laplacian(g: &GraphSample) -> LaplacianMatrix {
    let mut m = Matrix::zeros(g.n);
    for (i, d) in g.degrees().into_iter().enumerate() {
        m[(i, i)] = d as f64;
    }
    for &(i, j) in &g.edges {
        m[(i, j)] = -1.0;
        m[(j, i)] = -1.0;
    }
    LaplacianMatrix { matrix: m }
}

/// True iff every node is reachable from node 0 (breadth-first search).
pub fn is_connected_bfs(g: &GraphSample) -> bool {
    if g.n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); g.n];
    for &(i, j) in &g.edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached == g.n
}
