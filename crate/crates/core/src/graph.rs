//! Immutable simple undirected graphs with dense vertex ids and BFS metric
//! queries.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Construction-time validation failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    VertexOutOfRange { v: usize, n: usize },
    AsymmetricAdjacency { u: usize, v: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {}", v),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge ({}, {})", u, v),
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex id {} out of range for n = {}", v, n)
            }
            GraphError::AsymmetricAdjacency { u, v } => {
                write!(f, "adjacency not symmetric at ({}, {})", u, v)
            }
        }
    }
}

/// Immutable simple undirected graph. Adjacency lists are sorted ascending,
/// which fixes iteration order everywhere downstream.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    name: Option<String>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}", self.n)?;
        if let Some(name) = &self.name {
            write!(f, ", name={}", name)?;
        }
        write!(f, ", edges={:?})", self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj, name: None })
    }

    /// Builds a graph from explicit adjacency lists, validating simplicity
    /// and symmetry.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = adj.len();
        let mut cleaned = Vec::with_capacity(n);
        for (u, list) in adj.iter().enumerate() {
            let mut l = list.clone();
            l.sort_unstable();
            for w in l.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateEdge(u, w[0]));
                }
            }
            for &v in &l {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if !adj[v].contains(&u) {
                    return Err(GraphError::AsymmetricAdjacency { u, v });
                }
            }
            cleaned.push(l);
        }
        Ok(Graph { n, adj: cleaned, name: None })
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(String::from(name));
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let d = self.distances_from(0);
        d.iter().all(Option::is_some)
    }

    /// BFS distances from `v`; `None` marks unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length, `None` when disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        // Early-exit BFS.
        let mut dist = vec![None; self.n];
        dist[u] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &w in &self.adj[x] {
                if dist[w].is_none() {
                    if w == v {
                        return Some(dx + 1);
                    }
                    dist[w] = Some(dx + 1);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Pairwise distances between `support` vertices, measured in the whole
    /// graph (never inside the induced subgraph).
    pub fn distance_matrix_restricted(&self, support: &[usize]) -> Vec<Vec<Option<usize>>> {
        support
            .iter()
            .map(|&s| {
                let all = self.distances_from(s);
                support.iter().map(|&t| all[t]).collect()
            })
            .collect()
    }

    /// Applies a relabeling `perm` (new id of vertex `v` is `perm[v]`).
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![Vec::new(); self.n];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                adj[perm[u]].push(perm[v]);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Graph { n: self.n, adj, name: self.name.clone() }
    }

    /// Adjacency rows as bitsets, valid for `n <= 64`.
    pub fn bitset_rows(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        let mut rows = vec![0u64; self.n];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                rows[u] |= 1u64 << v;
            }
        }
        Some(rows)
    }
}

/// Edge reference with endpoints normalized to `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
}

impl EdgeRef {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "edge endpoints must differ");
        if a < b {
            EdgeRef { u: a, v: b }
        } else {
            EdgeRef { u: b, v: a }
        }
    }

    pub fn in_graph(&self, g: &Graph) -> bool {
        g.has_edge(self.u, self.v)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}
