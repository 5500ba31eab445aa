//! Counting copies of a small pattern inside a host graph.
//!
//! A copy is a subgraph of the host isomorphic to the pattern, not
//! necessarily induced. Injective adjacency-preserving maps overcount each
//! copy exactly `a(pattern)` times, so `copies = embeddings / a(pattern)`.

use std::collections::VecDeque;

use super::{automorphism_count, Graph, GraphError};

pub const DEFAULT_PATTERN_CAP: usize = 10;

/// Pattern vertices in BFS order, each with one earlier neighbour if any.
fn pattern_order(pattern: &Graph) -> Vec<(usize, Option<usize>)> {
    let n = pattern.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        out.push((s, None));
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in pattern.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    out.push((w, Some(u)));
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<(usize, Option<usize>)>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph) -> Self {
        Matcher {
            host,
            pattern,
            order: pattern_order(pattern),
            image: vec![usize::MAX; pattern.vertex_count()],
            used: vec![false; host.vertex_count()],
        }
    }

    fn fits(&self, u: usize, w: usize) -> bool {
        !self.used[w]
            && self.host.degree(w) >= self.pattern.degree(u)
            && self.pattern.neighbors(u).iter().all(|&x| {
                let ix = self.image[x];
                ix == usize::MAX || self.host.has_edge(w, ix)
            })
    }

    /// Counts embeddings; stops early once `stop_at` is reached.
    fn run(&mut self, pos: usize, stop_at: u128) -> u128 {
        let Some(&(u, parent)) = self.order.get(pos) else {
            return 1;
        };
        let candidates: Vec<usize> = match parent {
            Some(p) => self.host.neighbors(self.image[p]).to_vec(),
            None => (0..self.host.vertex_count()).collect(),
        };
        let mut total = 0u128;
        for w in candidates {
            if self.fits(u, w) {
                self.image[u] = w;
                self.used[w] = true;
                total += self.run(pos + 1, stop_at - total);
                self.used[w] = false;
                self.image[u] = usize::MAX;
                if total >= stop_at {
                    break;
                }
            }
        }
        total
    }
}

fn check_caps(host: &Graph, pattern: &Graph, cap: usize) -> Result<(), GraphError> {
    if pattern.vertex_count() > cap {
        return Err(GraphError::CapExceeded {
            what: "pattern size",
            size: pattern.vertex_count(),
            cap,
        });
    }
    if pattern.vertex_count() > host.vertex_count() {
        return Err(GraphError::Domain(
            "pattern has more vertices than host".into(),
        ));
    }
    Ok(())
}

/// Number of injective maps `pattern → host` that send edges to edges.
pub fn count_embeddings(host: &Graph, pattern: &Graph) -> u128 {
    Matcher::new(host, pattern).run(0, u128::MAX)
}

pub fn count_subgraph_copies(host: &Graph, pattern: &Graph) -> Result<u128, GraphError> {
    count_subgraph_copies_with_cap(host, pattern, DEFAULT_PATTERN_CAP)
}

pub fn count_subgraph_copies_with_cap(
    host: &Graph,
    pattern: &Graph,
    cap: usize,
) -> Result<u128, GraphError> {
    check_caps(host, pattern, cap)?;
    let aut = automorphism_count(pattern)?;
    Ok(count_embeddings(host, pattern) / aut)
}

/// Whether the host contains at least one copy; stops at the first embedding.
pub fn has_copy(host: &Graph, pattern: &Graph) -> Result<bool, GraphError> {
    has_copy_with_cap(host, pattern, DEFAULT_PATTERN_CAP)
}

pub fn has_copy_with_cap(host: &Graph, pattern: &Graph, cap: usize) -> Result<bool, GraphError> {
    check_caps(host, pattern, cap)?;
    Ok(Matcher::new(host, pattern).run(0, 1) > 0)
}
