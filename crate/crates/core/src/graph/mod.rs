//! Simple undirected graphs, their file formats and generators.

mod generate;
mod io;

pub use generate::{generate, GraphKind};
pub use io::{
    graph6, load_graph, read_edge_list, read_matrix_market, save_graph, write_edge_list,
    write_matrix_market, EdgeListOptions, Format, LoadedGraph,
};

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A simple undirected graph on nodes `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted, with no duplicates
/// and no self-loops. The value is immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge iterator. Pairs are canonicalised to
    /// `u < v` and duplicates collapse; self-loops and endpoints `>= n` are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop {
                    node: u,
                    location: None,
                });
            }
            list.push((u.min(v), u.max(v)));
        }
        Ok(Self::from_canonical(n, list))
    }

    /// `edges` must already satisfy `u < v < n`.
    pub(crate) fn from_canonical(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Copy of the graph with edge `{u, v}` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let key = (u.min(v), u.max(v));
        let edges = self.edges.iter().copied().filter(|&e| e != key).collect();
        Self::from_canonical(self.n, edges)
    }

    /// Breadth-first spanning forest, rooted at the lowest index of each
    /// component.
    pub fn spanning_tree(&self) -> Graph {
        let mut seen = vec![false; self.n];
        let mut tree = Vec::with_capacity(self.n.saturating_sub(1));
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        tree.push((u.min(v), u.max(v)));
                        queue.push_back(v);
                    }
                }
            }
        }
        Self::from_canonical(self.n, tree)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Edge density `2m / (n(n-1))`.
    pub fn density(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::invalid("density needs at least two nodes"));
        }
        let n = self.n as f64;
        Ok(2.0 * self.m() as f64 / (n * (n - 1.0)))
    }

    /// Per-node triangle counts.
    pub fn triangles_per_node(&self) -> Vec<u64> {
        let mut tri = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            // common neighbours w > v close each triangle exactly once
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let w = a[i];
                        if w > v {
                            tri[u] += 1;
                            tri[v] += 1;
                            tri[w] += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        tri
    }

    pub fn clustering(&self) -> Clustering {
        let tri = self.triangles_per_node();
        let triangle_count = tri.iter().sum::<u64>() / 3;
        let mut triples = 0u64;
        let mut local_sum = 0.0;
        for (u, &t) in tri.iter().enumerate() {
            let d = self.degree(u) as u64;
            let pairs = d * d.saturating_sub(1) / 2;
            triples += pairs;
            if pairs > 0 {
                local_sum += t as f64 / pairs as f64;
            }
        }
        Clustering {
            watts_strogatz_avg: if self.n == 0 {
                0.0
            } else {
                local_sum / self.n as f64
            },
            transitivity: if triples == 0 {
                0.0
            } else {
                3.0 * triangle_count as f64 / triples as f64
            },
            triangle_count,
        }
    }
}

/// Clustering statistics of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Clustering {
    /// Mean local clustering; nodes of degree < 2 contribute 0.
    pub watts_strogatz_avg: f64,
    /// `3 * triangles / connected triples`, 0 when there are no triples.
    pub transitivity: f64,
    pub triangle_count: u64,
}

/// External names for node indices, as read from a labelled input file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeLabelMap {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeLabelMap {
    /// Fails if two indices share a label.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate node label {l:?}")));
            }
        }
        Ok(NodeLabelMap { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}
