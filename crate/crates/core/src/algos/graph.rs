//! Problem graphs for the vertex-cover benchmark.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Stream;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are normalized to `(low, high)` and sorted.
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n_vertices == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop on vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) outside {n_vertices} vertices")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph { n_vertices, edges: set.into_iter().collect() })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// `|E| / C(n, 2)`; zero for a single vertex.
    pub fn density(&self) -> f64 {
        let n = self.n_vertices as f64;
        if self.n_vertices < 2 {
            return 0.0;
        }
        self.edges.len() as f64 / (n * (n - 1.0) / 2.0)
    }

    /// True when every edge has at least one endpoint set in `cover`.
    pub fn is_cover(&self, cover: usize) -> bool {
        self.edges.iter().all(|&(u, v)| cover >> u & 1 == 1 || cover >> v & 1 == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphKind {
    Path { n: usize },
    /// Barabasi-Albert preferential attachment with `m` edges per new vertex.
    Ba { n: usize, m: usize, seed: u64 },
    CompleteBipartite { a: usize, b: usize },
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Path { n } => write!(f, "PATH{n}"),
            GraphKind::Ba { n, m, .. } => write!(f, "BA{n}_{m}"),
            GraphKind::CompleteBipartite { a, b } => write!(f, "K{a}_{b}"),
        }
    }
}

pub fn make_graph(kind: GraphKind) -> Result<Graph> {
    match kind {
        GraphKind::Path { n } => Graph::new(n, (1..n).map(|i| (i - 1, i))),
        GraphKind::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidParameter("bipartite sides must be non-empty".into()));
            }
            Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        GraphKind::Ba { n, m, seed } => barabasi_albert(n, m, seed),
    }
}

/// Starts from the complete graph on `m + 1` vertices; each later vertex
/// attaches to `m` distinct earlier vertices drawn proportionally to degree.
fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("BA graph needs 0 < m < n, got n={n} m={m}")));
    }
    let mut edges = Vec::new();
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
        }
    }
    // Each edge endpoint appears once, so uniform picks are degree-weighted.
    let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut rng = Stream::new(seed);
    for v in m + 1..n {
        let mut targets = BTreeSet::new();
        while targets.len() < m {
            targets.insert(endpoints[rng.below(endpoints.len() as u64) as usize]);
        }
        for t in targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::new(n, edges)
}
