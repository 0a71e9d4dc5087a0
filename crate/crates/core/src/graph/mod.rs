//! Simple undirected graphs on `0..n` with one adjacency bitset per vertex.

mod deficiency;
pub mod graph6;
mod vertex_set;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

pub use deficiency::{weight_between, DeficiencyProfile};
pub use vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("adjacency list, line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The empty graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, adj: vec![0; n * words] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("n >= 3")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)));
        Graph::from_edges(a + b, edges).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn word_len(&self) -> usize {
        self.words
    }

    /// Adjacency bitset of `v`, `word_len()` words long.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Adds `uv`; returns whether it was new. Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v})");
        let present = self.has_edge(u, v);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
        !present
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let present = self.has_edge(u, v);
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
        present
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        vertex_set::iter_bits(self.row(v))
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// Number of common neighbours of `u` and `v`.
    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    /// Degree -> number of vertices with that degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for v in 0..self.n {
            *hist.entry(self.degree(v)).or_insert(0) += 1;
        }
        hist
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Deletes `drop` and relabels the survivors in increasing order.
    pub fn remove_vertices(&self, drop: &VertexSet) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// A 4-cycle `[a, b, c, d]` (edges ab, bc, cd, da) if one exists.
    ///
    /// Uses the fact that a graph is C4-free exactly when every pair of vertices has
    /// at most one common neighbour.
    pub fn find_c4(&self) -> Option<[usize; 4]> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.codegree(u, v) >= 2 {
                    let common: Vec<u64> = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
                    let mut it = vertex_set::iter_bits(&common);
                    let a = it.next().unwrap();
                    let b = it.next().unwrap();
                    return Some([u, a, v, b]);
                }
            }
        }
        None
    }

    pub fn is_c4_free(&self) -> bool {
        self.find_c4().is_none()
    }

    /// Number of 2-paths `x - y - z` (unordered ends, `x != z`) whose ends both lie
    /// outside `outside`. Counted over end pairs, so it is independent of the
    /// middle-vertex sum used in the lemma checks.
    pub fn count_2paths_outside(&self, outside: &VertexSet) -> u64 {
        let free: Vec<usize> = (0..self.n).filter(|&v| !outside.contains(v)).collect();
        let mut total = 0u64;
        for (i, &a) in free.iter().enumerate() {
            for &b in &free[i + 1..] {
                total += self.codegree(a, b) as u64;
            }
        }
        total
    }

    /// Human-readable adjacency list: a `n m` header, then `v: neighbours...` per line.
    pub fn to_adjacency_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for v in 0..self.n {
            let _ = write!(out, "{v}:");
            for u in self.neighbors(v) {
                let _ = write!(out, " {u}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_adjacency_list(text: &str) -> Result<Graph, GraphError> {
        let parse_err = |line: usize, reason: &str| GraphError::Parse { line, reason: reason.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let mut head = header.split_whitespace();
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(hl + 1, "bad vertex count"))?;
        let m: Option<usize> = head.next().and_then(|t| t.parse().ok());
        let mut g = Graph::new(n);
        for (ln, line) in lines {
            let (v, rest) = line.split_once(':').ok_or_else(|| parse_err(ln + 1, "expected `v:`"))?;
            let v: usize = v.trim().parse().map_err(|_| parse_err(ln + 1, "bad vertex"))?;
            for tok in rest.split_whitespace() {
                let u: usize = tok.parse().map_err(|_| parse_err(ln + 1, "bad neighbour"))?;
                if u >= n || v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
                }
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
                g.add_edge(u, v);
            }
        }
        if let Some(m) = m {
            if m != g.edge_count() {
                return Err(parse_err(hl + 1, "edge count does not match the lists"));
            }
        }
        Ok(g)
    }
}
