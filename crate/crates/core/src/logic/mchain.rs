//! Direct search for `m`-chains.
//!
//! An `m`-chain of length `l` from `a` to `b` is a walk `a = w0, …, wl = b`
//! together with `m`-cliques `c1, …, cl`, `ci ⊇ {w(i-1), wi}`, such that any
//! two of the cliques share at most one vertex. The chain avoids a vertex set
//! when no clique touches it. Minimality of `l` is not required.

use crate::graph::Graph;

pub const M_CHAIN_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MChainError {
    #[error("graph has {0} vertices, cap is {M_CHAIN_CAP}")]
    CapExceeded(usize),
    #[error("{0}")]
    Domain(String),
}

pub fn check_m_chain_exists(
    g: &Graph,
    m: usize,
    l: usize,
    ends: (usize, usize),
    avoid: &[usize],
) -> Result<bool, MChainError> {
    let n = g.vertex_count();
    if n > M_CHAIN_CAP {
        return Err(MChainError::CapExceeded(n));
    }
    if m < 2 || l == 0 {
        return Err(MChainError::Domain(format!("need m >= 2 and l >= 1, got m={m}, l={l}")));
    }
    let (a, b) = ends;
    if let Some(&bad) = [a, b].iter().chain(avoid).find(|&&v| v >= n) {
        return Err(MChainError::Domain(format!("vertex {bad} out of range")));
    }
    let avoid_mask = avoid.iter().fold(0u64, |acc, &v| acc | 1 << v);
    if a == b || avoid_mask & (1 << a | 1 << b) != 0 {
        return Ok(false);
    }
    let adj = g.adjacency_masks().expect("cap keeps n within 64");
    let allowed = !avoid_mask & ((1u64 << n) - 1);
    let mut cliques = Vec::new();
    grow_cliques(&adj, m, 0, allowed, &mut cliques);
    let by_vertex: Vec<Vec<u64>> = (0..n)
        .map(|v| cliques.iter().copied().filter(|c| c >> v & 1 == 1).collect())
        .collect();
    let dist = distances_to(b, &adj, allowed);
    let search = ChainSearch {
        by_vertex,
        dist,
        target: b,
        length: l,
    };
    Ok(search.walk(0, a, &mut Vec::new()))
}

fn grow_cliques(adj: &[u64], m: usize, current: u64, candidates: u64, out: &mut Vec<u64>) {
    if current.count_ones() as usize == m {
        out.push(current);
        return;
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        grow_cliques(adj, m, current | 1 << v, rest & adj[v], out);
    }
}

fn distances_to(b: usize, adj: &[u64], allowed: u64) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[b] = 0;
    let mut frontier = vec![b];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in frontier {
            let mut nb = adj[v] & allowed;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

struct ChainSearch {
    by_vertex: Vec<Vec<u64>>,
    dist: Vec<usize>,
    target: usize,
    length: usize,
}

impl ChainSearch {
    fn walk(&self, step: usize, at: usize, used: &mut Vec<u64>) -> bool {
        if step == self.length {
            return at == self.target;
        }
        let remaining = self.length - step - 1;
        for &c in &self.by_vertex[at] {
            if used.iter().any(|&u| (u & c).count_ones() > 1) {
                continue;
            }
            let mut others = c & !(1 << at);
            while others != 0 {
                let w = others.trailing_zeros() as usize;
                others &= others - 1;
                if self.dist[w] > remaining {
                    continue;
                }
                used.push(c);
                let found = self.walk(step + 1, w, used);
                used.pop();
                if found {
                    return true;
                }
            }
        }
        false
    }
}
