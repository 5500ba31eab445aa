//! Clique cycles, clique chains, figure-eights and a bounded search for
//! strictly balanced graphs of a prescribed density.
//!
//! Labeling convention: clique `i` owns the consecutive vertex block
//! `i(m−1) ..= i(m−1) + (m−1)`; its last vertex is shared with clique `i+1`
//! and keeps the lower index. Nodal vertices are the multiples of `m−1`.

use rayon::prelude::*;

use crate::graph::{is_strictly_balanced, Graph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{0}")]
    Parameter(String),
}

fn param<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Parameter(msg.into()))
}

/// Largest graph any generator here will build.
pub const CONSTRUCTION_VERTEX_CAP: usize = 1 << 16;

fn add_clique(g: &mut Graph, vertices: &[usize]) {
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if !g.has_edge(a, b) {
                g.add_edge(a, b).expect("clique vertices in range");
            }
        }
    }
}

fn check_m(m: usize) -> Result<(), ConstructionError> {
    if m < 2 {
        return param(format!("clique size m must be >= 2, got {m}"));
    }
    Ok(())
}

fn check_size(v: usize) -> Result<(), ConstructionError> {
    if v > CONSTRUCTION_VERTEX_CAP {
        return param(format!(
            "{v} vertices exceeds the cap of {CONSTRUCTION_VERTEX_CAP}"
        ));
    }
    Ok(())
}

/// Appends an m-cycle of length `d` whose nodal vertex 0 is `anchor`; other
/// vertices are numbered from the current vertex count on.
fn append_m_cycle(g: &mut Graph, m: usize, d: usize, anchor: usize) {
    let base = g.add_vertices(d * (m - 1) - 1);
    // Local index 0 is the anchor; local j > 0 maps to base + j - 1.
    let at = |j: usize| if j == 0 { anchor } else { base + j - 1 };
    let total = d * (m - 1);
    for i in 0..d {
        let clique: Vec<usize> = (0..m).map(|j| at((i * (m - 1) + j) % total)).collect();
        add_clique(g, &clique);
    }
}

/// `d` copies of `K_m` on a cycle of `d` nodal vertices, neighbours sharing
/// exactly one nodal vertex: `d(m−1)` vertices and `d·m(m−1)/2` edges.
pub fn make_m_cycle(m: usize, d: usize) -> Result<Graph, ConstructionError> {
    check_m(m)?;
    if d < 3 {
        return param(format!("cycle length d must be >= 3, got {d}"));
    }
    check_size(d * (m - 1))?;
    let mut g = Graph::empty(1);
    append_m_cycle(&mut g, m, d, 0);
    Ok(g)
}

/// A simple m-chain together with its two ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MChain {
    pub graph: Graph,
    pub ends: (usize, usize),
}

/// `d` copies of `K_m` along a path, consecutive cliques sharing one vertex.
/// The ends are the first and last nodal vertices and carry the labels `u`
/// and `v`.
pub fn make_m_chain(m: usize, d: usize) -> Result<MChain, ConstructionError> {
    check_m(m)?;
    if d < 1 {
        return param("chain length d must be >= 1");
    }
    let n = d * (m - 1) + 1;
    check_size(n)?;
    let mut g = Graph::empty(n);
    for i in 0..d {
        let clique: Vec<usize> = (i * (m - 1)..=(i + 1) * (m - 1)).collect();
        add_clique(&mut g, &clique);
    }
    let ends = (0, n - 1);
    let labels = (0..n)
        .map(|v| match v {
            v if v == ends.0 => "u".to_string(),
            v if v == ends.1 => "v".to_string(),
            v => v.to_string(),
        })
        .collect();
    g.set_labels(labels);
    Ok(MChain { graph: g, ends })
}

/// `G_{l1,l2}`: m-cycles of lengths `l1` and `l2` glued at one nodal vertex
/// (vertex 0). `(l1+l2)(m−1) − 1` vertices, `(l1+l2)·m(m−1)/2` edges.
pub fn make_figure_eight(m: usize, l1: usize, l2: usize) -> Result<Graph, ConstructionError> {
    check_m(m)?;
    if l1 < 3 || l2 < 3 {
        return param(format!("cycle lengths must be >= 3, got {l1} and {l2}"));
    }
    check_size((l1 + l2) * (m - 1))?;
    let mut g = make_m_cycle(m, l1)?;
    append_m_cycle(&mut g, m, l2, 0);
    Ok(g)
}

/// Closed form of the figure-eight density:
/// `(l1+l2)·m(m−1)/2 / ((l1+l2)(m−1) − 1)`.
pub fn figure_eight_density(m: usize, l1: usize, l2: usize) -> Rational {
    let l = (l1 + l2) as i64;
    let m = m as i64;
    Rational::new(l * m * (m - 1), 2 * (l * (m - 1) - 1))
}

/// Largest `vmax` accepted by [`find_strictly_balanced_with_density`].
pub const BALANCED_SEARCH_VMAX: usize = 12;

struct BalancedSearch {
    v: usize,
    edges: usize,
    /// target = num/den
    num: u64,
    den: u64,
    min_degree: usize,
    pairs: Vec<(usize, usize)>,
    masks: Vec<u64>,
    degree: Vec<usize>,
    chosen: usize,
}

impl BalancedSearch {
    fn subsets_sparse_through(&self, r: usize) -> bool {
        // Every subset of {0..=r} containing r, proper in {0..v}, has density < target.
        if r + 1 == self.v {
            return true;
        }
        let low = (1u64 << r) - 1;
        let mut sub = low;
        loop {
            let set = sub | (1u64 << r);
            let size = set.count_ones() as u64;
            let mut e = 0u64;
            let mut rest = set;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                e += (self.masks[x] & rest).count_ones() as u64;
            }
            if e * self.den >= self.num * size {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & low;
        }
    }

    fn row_ok(&self, r: usize) -> bool {
        if self.degree[r] < self.min_degree {
            return false;
        }
        // Vertices after r can still gain pairs (i, j) with r < i.
        let slack = self.v.saturating_sub(r + 2);
        if (r + 1..self.v).any(|j| self.degree[j] + slack < self.min_degree) {
            return false;
        }
        self.subsets_sparse_through(r)
    }

    fn finish_rows(&self, idx: usize) -> bool {
        // Pair `idx` was the last of its row when the next pair starts a new row.
        let (r, _) = self.pairs[idx];
        let row_done = self.pairs.get(idx + 1).is_none_or(|&(nr, _)| nr != r);
        if !row_done {
            return true;
        }
        if !self.row_ok(r) {
            return false;
        }
        if idx + 1 == self.pairs.len() {
            return self.degree[self.v - 1] >= self.min_degree;
        }
        true
    }

    fn dfs(&mut self, idx: usize) -> Option<Graph> {
        if idx == self.pairs.len() {
            if self.chosen != self.edges {
                return None;
            }
            let mut g = Graph::empty(self.v);
            for (a, mask) in self.masks.iter().enumerate() {
                let mut rest = mask >> (a + 1);
                while rest != 0 {
                    let off = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    g.add_edge(a, a + 1 + off).expect("fresh");
                }
            }
            return is_strictly_balanced(&g).ok()?.then_some(g);
        }
        let remaining = self.pairs.len() - idx;
        if self.chosen + remaining < self.edges {
            return None;
        }
        let (a, b) = self.pairs[idx];
        if self.chosen < self.edges {
            self.masks[a] |= 1 << b;
            self.masks[b] |= 1 << a;
            self.degree[a] += 1;
            self.degree[b] += 1;
            self.chosen += 1;
            let found = if self.finish_rows(idx) {
                self.dfs(idx + 1)
            } else {
                None
            };
            self.masks[a] &= !(1 << b);
            self.masks[b] &= !(1 << a);
            self.degree[a] -= 1;
            self.degree[b] -= 1;
            self.chosen -= 1;
            if found.is_some() {
                return found;
            }
        }
        if self.finish_rows(idx) {
            self.dfs(idx + 1)
        } else {
            None
        }
    }
}

/// First strictly balanced graph with density exactly `target` in the order
/// (fewest vertices, then lexicographically smallest sorted edge list), over
/// graphs with at most `vmax` vertices.
///
/// The search fixes the vertex count `v` (which must make `target·v` an
/// integer), walks the vertex pairs in lexicographic order trying "edge"
/// before "non-edge", and prunes with two necessary conditions: every vertex
/// of a strictly balanced graph has degree strictly above its density, and
/// once a row of pairs is decided, every subset of the already-settled prefix
/// must be strictly sparser than the target.
pub fn find_strictly_balanced_with_density(
    target: &Rational,
    vmax: usize,
) -> Result<Option<Graph>, ConstructionError> {
    if *target <= Rational::new(1, 2) {
        return param(format!("target density must exceed 1/2, got {target}"));
    }
    if vmax > BALANCED_SEARCH_VMAX {
        return param(format!(
            "vmax must be <= {BALANCED_SEARCH_VMAX}, got {vmax}"
        ));
    }
    let num = u64::try_from(target.numer()).expect("small target");
    let den = u64::try_from(target.denom()).expect("small target");
    let candidates: Vec<(usize, usize)> = (2..=vmax)
        .filter_map(|v| {
            let v64 = v as u64;
            if (num * v64) % den != 0 {
                return None;
            }
            let e = (num * v64 / den) as usize;
            (e <= v * (v - 1) / 2).then_some((v, e))
        })
        .collect();
    let found = candidates.par_iter().find_map_first(|&(v, e)| {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .collect();
        let mut search = BalancedSearch {
            v,
            edges: e,
            num,
            den,
            min_degree: (num / den) as usize + 1,
            pairs,
            masks: vec![0; v],
            degree: vec![0; v],
            chosen: 0,
        };
        search.dfs(0)
    });
    Ok(found)
}
