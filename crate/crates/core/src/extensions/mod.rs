//! Rooted pairs `(G, H)` and the extension calculus built on them.
//!
//! A [`RootedPair`] is a graph `G` together with an ordered list of root
//! vertices; `H` is the subgraph of `G` induced on the roots. With
//! `v(G,H) = |V(G) \ V(H)|` and `e(G,H) = |E(G) \ E(H)|` the central quantity
//! is `f_α(G,H) = v(G,H) − α·e(G,H)`.

mod chain;
mod exact;
mod property_s1;
mod safe;

use std::fmt;
use std::str::FromStr;

pub use chain::{verify_chain, ChainCertificate, ChainError, ChainReport, StepReport};
pub use exact::{
    find_exact_extensions, is_kt_maximal, EmbeddedPair, Embedding, MaximalityChecker,
};
pub use property_s1::{check_property_s1, DEFAULT_S1_CAP};
pub use safe::{is_alpha_safe, is_alpha_safe_with_cap, DEFAULT_SAFE_CAP};

use crate::graph::{Graph, GraphError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid rooted pair: {0}")]
    InvalidPair(String),
    #[error("{0}")]
    Domain(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

/// A graph with an ordered list of distinct root vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedPair {
    big: Graph,
    roots: Vec<usize>,
}

impl RootedPair {
    pub fn new(big: Graph, roots: Vec<usize>) -> Result<Self, ExtensionError> {
        let mut seen = vec![false; big.vertex_count()];
        for &r in &roots {
            if r >= big.vertex_count() {
                return Err(ExtensionError::InvalidPair(format!(
                    "root {r} out of range for {} vertices",
                    big.vertex_count()
                )));
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(ExtensionError::InvalidPair(format!("root {r} repeated")));
            }
        }
        Ok(RootedPair { big, roots })
    }

    pub fn big(&self) -> &Graph {
        &self.big
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.roots.contains(&v)
    }

    /// `H`, the subgraph induced on the roots (vertex `i` is `roots[i]`).
    pub fn small(&self) -> Graph {
        self.big.induced(&self.roots)
    }

    /// Non-root vertices in increasing order.
    pub fn new_vertices(&self) -> Vec<usize> {
        (0..self.big.vertex_count())
            .filter(|v| !self.is_root(*v))
            .collect()
    }

    /// `(v(G,H), e(G,H))`.
    pub fn stats(&self) -> (usize, usize) {
        pair_stats(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.big.to_edge_list();
        out.push_str("roots:");
        for r in &self.roots {
            out.push_str(&format!(" {r}"));
        }
        out.push('\n');
        out
    }
}

impl fmt::Debug for RootedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedPair({:?}, roots={:?})", self.big, self.roots)
    }
}

impl FromStr for RootedPair {
    type Err = ExtensionError;

    /// Edge-list text followed by a `roots:` line of vertex ids.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut graph_text = String::new();
        let mut roots = None;
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if let Some(rest) = body.strip_prefix("roots:") {
                if roots.is_some() {
                    return Err(GraphError::Parse {
                        line: i + 1,
                        message: "second roots line".into(),
                    }
                    .into());
                }
                let parsed: Result<Vec<usize>, _> =
                    rest.split_whitespace().map(str::parse).collect();
                roots = Some(parsed.map_err(|_| GraphError::Parse {
                    line: i + 1,
                    message: format!("bad root list {rest:?}"),
                })?);
                graph_text.push('\n');
            } else {
                graph_text.push_str(line);
                graph_text.push('\n');
            }
        }
        let roots = roots.ok_or_else(|| ExtensionError::InvalidPair("missing roots: line".into()))?;
        RootedPair::new(graph_text.parse()?, roots)
    }
}

/// `(v(G,H), e(G,H))`: non-root vertices and edges not inside the roots.
pub fn pair_stats(p: &RootedPair) -> (usize, usize) {
    let v = p.big.vertex_count() - p.roots.len();
    let e = p.big.edge_count() - p.big.edges_within(&p.roots);
    (v, e)
}

/// `f_α(G,H) = v(G,H) − α·e(G,H)`, exact.
pub fn f_alpha(p: &RootedPair, alpha: &Rational) -> Rational {
    let (v, e) = pair_stats(p);
    f_alpha_from_stats(v, e, alpha)
}

pub(crate) fn f_alpha_from_stats(v: usize, e: usize, alpha: &Rational) -> Rational {
    Rational::from_integer(v as i64) - alpha * &Rational::from_integer(e as i64)
}
