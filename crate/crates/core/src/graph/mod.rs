//! Finite simple undirected graphs and their exact structural invariants.

mod automorphism;
mod copies;
mod density;
mod enumerate;
pub mod flow;

use std::fmt;
use std::str::FromStr;

pub use automorphism::{
    automorphism_count, automorphism_count_with_cap, automorphisms, DEFAULT_AUTOMORPHISM_CAP,
};
pub use copies::{
    count_embeddings, count_subgraph_copies, count_subgraph_copies_with_cap, has_copy,
    has_copy_with_cap, DEFAULT_PATTERN_CAP,
};
pub use density::{
    density, is_balanced, is_strictly_balanced, max_subgraph_density, max_subgraph_density_flow,
    max_subgraph_density_subsets, SUBSET_SCAN_LIMIT,
};
pub use enumerate::{canonical_form, nonisomorphic_graphs};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid edge {0}-{1}: {2}")]
    InvalidEdge(usize, usize, &'static str),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("{0}")]
    Domain(String),
}

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// Adjacency lists are kept sorted, so two graphs with the same vertex count
/// and edge set compare equal regardless of insertion order. Labels are
/// informational and ignored by `==`.
#[derive(Clone, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                g.insert_unchecked(a, b);
            }
        }
        g
    }

    /// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for a in 0..n {
            g.insert_unchecked(a, (a + 1) % n);
        }
        g
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for a in 1..n {
            g.insert_unchecked(a - 1, a);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        if a >= n || b >= n {
            return Err(GraphError::InvalidEdge(a, b, "endpoint out of range"));
        }
        if a == b {
            return Err(GraphError::InvalidEdge(a, b, "loop"));
        }
        if self.has_edge(a, b) {
            return Err(GraphError::InvalidEdge(a, b, "duplicate edge"));
        }
        self.insert_unchecked(a, b);
        Ok(())
    }

    fn insert_unchecked(&mut self, a: usize, b: usize) {
        let pos = self.adj[a].binary_search(&b).unwrap_err();
        self.adj[a].insert(pos, b);
        let pos = self.adj[b].binary_search(&a).unwrap_err();
        self.adj[b].insert(pos, a);
        self.edge_count += 1;
    }

    /// Adds `count` isolated vertices and returns the index of the first.
    pub fn add_vertices(&mut self, count: usize) -> usize {
        let first = self.adj.len();
        self.adj.resize(first + count, Vec::new());
        if let Some(labels) = &mut self.labels {
            labels.extend((first..first + count).map(|v| v.to_string()));
        }
        first
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.adj.len(), "one label per vertex");
        self.labels = Some(labels);
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.insert_unchecked(i, j);
                }
            }
        }
        g
    }

    /// Number of edges with both endpoints in `vertices` (a sorted or unsorted set).
    pub fn edges_within(&self, vertices: &[usize]) -> usize {
        let mut member = vec![false; self.adj.len()];
        for &v in vertices {
            member[v] = true;
        }
        vertices
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| w > v && member[w]).count())
            .sum()
    }

    /// Row bitmasks, available while the graph has at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.adj.len() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|nbrs| nbrs.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                .collect(),
        )
    }

    /// Applies the vertex relabeling `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.adj.len());
        for (a, b) in self.edges() {
            g.insert_unchecked(perm[a], perm[b]);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.adj.len();
        let mut g = self.clone();
        g.labels = None;
        g.add_vertices(other.vertex_count());
        for (a, b) in other.edges() {
            g.insert_unchecked(a + shift, b + shift);
        }
        g
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        parse_edge_list(text)
    }

    /// Canonical edge-list text: header `v e`, then edges sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(v={}, edges=[", self.vertex_count())?;
        for (i, (a, b)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "])")
    }
}

impl FromStr for Graph {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_edge_list(s)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn parse_pair(line: &str, lineno: usize, what: &str) -> Result<(usize, usize), GraphError> {
    let err = |message: String| GraphError::Parse {
        line: lineno,
        message,
    };
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let f = fields
            .next()
            .ok_or_else(|| err(format!("expected two integers for {what}")))?;
        f.parse()
            .map_err(|_| err(format!("{f:?} is not a non-negative integer")))
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err(err(format!("trailing fields after {what}")));
    }
    Ok((a, b))
}

/// Parses the edge-list format: a `v e` header followed by `e` lines `a b`.
/// Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::empty(0);
    let mut seen = 0usize;
    let mut last_line = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        match header {
            None => {
                let (v, e) = parse_pair(line, lineno, "header `v e`")?;
                header = Some((v, e));
                graph = Graph::empty(v);
            }
            Some((_, e)) => {
                if seen == e {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: format!("more than the declared {e} edges"),
                    });
                }
                let (a, b) = parse_pair(line, lineno, "edge")?;
                graph.add_edge(a, b).map_err(|err| GraphError::Parse {
                    line: lineno,
                    message: err.to_string(),
                })?;
                seen += 1;
            }
        }
    }
    match header {
        None => Err(GraphError::Parse {
            line: last_line.max(1),
            message: "missing `v e` header".into(),
        }),
        Some((_, e)) if seen < e => Err(GraphError::Parse {
            line: last_line.max(1),
            message: format!("declared {e} edges but found {seen}"),
        }),
        Some(_) => Ok(graph),
    }
}
