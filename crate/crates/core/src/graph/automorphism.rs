//! Automorphism groups by backtracking over colour-refined partitions.
//!
//! `|Aut(G)|` is computed with the orbit-stabilizer theorem along a base
//! `b_1, b_2, …`: at each level we count the images `w` of `b_i` for which an
//! automorphism fixing `b_1..b_{i-1}` and sending `b_i ↦ w` exists, then fix
//! `b_i`. Each existence query is a depth-first search that only tries images
//! of the same stable colour (degree refinement) and checks adjacency against
//! every vertex already mapped.

use std::collections::{HashMap, VecDeque};

use super::{Graph, GraphError};

pub const DEFAULT_AUTOMORPHISM_CAP: usize = 32;

/// Stable colouring from iterated degree refinement.
pub(crate) fn refined_colours(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let index: HashMap<&(usize, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let next: Vec<usize> = signatures.iter().map(|s| index[s]).collect();
        let classes_before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colour = next;
        if distinct.len() == classes_before {
            return colour;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    colour: Vec<usize>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            colour: refined_colours(g),
            order: Vec::new(),
            image: vec![UNMAPPED; n],
            used: vec![false; n],
        }
    }

    /// Vertices in BFS order from `roots`, remaining components appended.
    fn set_order(&mut self, roots: &[usize]) {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let starts = roots.iter().copied().chain(0..n).collect::<Vec<_>>();
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in self.g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        self.order = order;
    }

    fn consistent(&self, u: usize, w: usize) -> bool {
        if self.used[w] || self.colour[u] != self.colour[w] {
            return false;
        }
        // Adjacency must agree with every mapped vertex; checking mapped
        // neighbours of u plus the degree count of w's mapped neighbours covers
        // both directions.
        let mut mapped_nbrs = 0;
        for &x in self.g.neighbors(u) {
            let ix = self.image[x];
            if ix != UNMAPPED {
                if !self.g.has_edge(w, ix) {
                    return false;
                }
                mapped_nbrs += 1;
            }
        }
        let image_nbrs = self
            .g
            .neighbors(w)
            .iter()
            .filter(|&&y| self.used[y])
            .count();
        image_nbrs == mapped_nbrs
    }

    fn assign(&mut self, u: usize, w: usize) {
        self.image[u] = w;
        self.used[w] = true;
    }

    fn unassign(&mut self, u: usize) {
        self.used[self.image[u]] = false;
        self.image[u] = UNMAPPED;
    }

    fn extend(&mut self, pos: usize) -> bool {
        let Some(&u) = self.order.get(pos) else {
            return true;
        };
        if self.image[u] != UNMAPPED {
            return self.extend(pos + 1);
        }
        for w in 0..self.g.vertex_count() {
            if self.consistent(u, w) {
                self.assign(u, w);
                if self.extend(pos + 1) {
                    self.unassign(u);
                    return true;
                }
                self.unassign(u);
            }
        }
        false
    }

    fn enumerate(&mut self, pos: usize, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
        let Some(&u) = self.order.get(pos) else {
            out.push(self.image.clone());
            return out.len() <= limit;
        };
        for w in 0..self.g.vertex_count() {
            if self.consistent(u, w) {
                self.assign(u, w);
                let ok = self.enumerate(pos + 1, out, limit);
                self.unassign(u);
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact `|Aut(G)|` for graphs within the default cap of 32 vertices.
pub fn automorphism_count(g: &Graph) -> Result<u128, GraphError> {
    automorphism_count_with_cap(g, DEFAULT_AUTOMORPHISM_CAP)
}

pub fn automorphism_count_with_cap(g: &Graph, cap: usize) -> Result<u128, GraphError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(GraphError::CapExceeded {
            what: "automorphism count",
            size: n,
            cap,
        });
    }
    let mut search = Search::new(g);
    let mut base: Vec<usize> = Vec::new();
    let mut total: u128 = 1;
    for b in 0..n {
        let mut orbit = 0u128;
        for w in 0..n {
            if search.colour[w] != search.colour[b] {
                continue;
            }
            let mut roots = base.clone();
            roots.push(b);
            search.set_order(&roots);
            for &x in &base {
                search.assign(x, x);
            }
            if search.consistent(b, w) {
                search.assign(b, w);
                if search.extend(0) {
                    orbit += 1;
                }
                search.unassign(b);
            }
            for &x in &base {
                search.unassign(x);
            }
        }
        total = total
            .checked_mul(orbit)
            .ok_or(GraphError::CapExceeded {
                what: "automorphism count (u128 overflow)",
                size: n,
                cap,
            })?;
        base.push(b);
    }
    Ok(total)
}

/// All automorphisms as permutations (`perm[v]` is the image of `v`), or
/// `None` if there are more than `limit`.
pub fn automorphisms(g: &Graph, limit: usize) -> Option<Vec<Vec<usize>>> {
    let mut search = Search::new(g);
    search.set_order(&[]);
    let mut out = Vec::new();
    if search.enumerate(0, &mut out, limit) {
        Some(out)
    } else {
        None
    }
}
