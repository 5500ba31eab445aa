//! Exact extensions in a host graph and `(K,T)`-maximality.
//!
//! An exact `(K,T)`-extension of an anchor tuple `a` in `Γ` is an injective
//! map `φ: V(K) → V(Γ)` with `φ(T[i]) = a[i]` such that for every pair `{x,y}`
//! not inside `T`, `xy ∈ E(K) ⇔ φ(x)φ(y) ∈ E(Γ)`.

use dashmap::DashMap;
use rayon::prelude::*;

use super::{ExtensionError, RootedPair};
use crate::graph::Graph;

/// Template vertex `i` maps to host vertex `embedding[i]`.
pub type Embedding = Vec<usize>;

/// All exact extensions of `pair` anchored at `anchors` (one host vertex per root, in order).
pub fn find_exact_extensions(
    host: &Graph,
    pair: &RootedPair,
    anchors: &[usize],
) -> Result<Vec<Embedding>, ExtensionError> {
    check_anchors(host, pair, anchors)?;
    if !spans_copy_of_roots(host, pair, anchors) {
        return Ok(Vec::new());
    }
    let n = host.vertex_count();
    let search = Search::new(host, pair, anchors, &vec![false; n], &vec![false; n]);
    Ok(search.run(usize::MAX))
}

fn check_anchors(host: &Graph, pair: &RootedPair, anchors: &[usize]) -> Result<(), ExtensionError> {
    if anchors.len() != pair.roots().len() {
        return Err(ExtensionError::Domain(format!(
            "{} anchors for {} roots",
            anchors.len(),
            pair.roots().len()
        )));
    }
    for (i, &a) in anchors.iter().enumerate() {
        if a >= host.vertex_count() {
            return Err(ExtensionError::Domain(format!("anchor {a} out of range")));
        }
        if anchors[..i].contains(&a) {
            return Err(ExtensionError::Domain(format!("anchor {a} repeated")));
        }
    }
    Ok(())
}

/// Anchors must carry a copy of `T`: every root-root edge of `K` is present.
/// Extra edges among the anchors are allowed.
fn spans_copy_of_roots(host: &Graph, pair: &RootedPair, anchors: &[usize]) -> bool {
    let roots = pair.roots();
    (0..roots.len()).all(|i| {
        (i + 1..roots.len())
            .all(|j| !pair.big().has_edge(roots[i], roots[j]) || host.has_edge(anchors[i], anchors[j]))
    })
}

struct Search<'a> {
    host: &'a Graph,
    template: &'a Graph,
    /// Non-root template vertices in BFS order from the roots.
    order: Vec<usize>,
    /// For each entry of `order`, an earlier-mapped template neighbour if any.
    parent: Vec<Option<usize>>,
    blocked: Vec<bool>,
    initial: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    /// `forbidden`: host vertices new vertices may not use. `avoid`: host
    /// vertices new vertices may not be adjacent to.
    fn new(
        host: &'a Graph,
        pair: &'a RootedPair,
        anchors: &[usize],
        forbidden: &[bool],
        avoid: &[bool],
    ) -> Self {
        let template = pair.big();
        let tn = template.vertex_count();
        let mut placed = vec![false; tn];
        let mut initial = vec![None; tn];
        for (&r, &a) in pair.roots().iter().zip(anchors) {
            placed[r] = true;
            initial[r] = Some(a);
        }
        let mut order = Vec::new();
        let mut parent = Vec::new();
        let mut queue: std::collections::VecDeque<usize> = pair.roots().iter().copied().collect();
        loop {
            while let Some(x) = queue.pop_front() {
                for &y in template.neighbors(x) {
                    if !placed[y] {
                        placed[y] = true;
                        order.push(y);
                        parent.push(Some(x));
                        queue.push_back(y);
                    }
                }
            }
            match (0..tn).find(|&v| !placed[v]) {
                Some(v) => {
                    placed[v] = true;
                    order.push(v);
                    parent.push(None);
                    queue.push_back(v);
                }
                None => break,
            }
        }
        let blocked = (0..host.vertex_count())
            .map(|w| forbidden[w] || host.neighbors(w).iter().any(|&z| avoid[z]))
            .collect();
        Search {
            host,
            template,
            order,
            parent,
            blocked,
            initial,
        }
    }

    fn run(&self, limit: usize) -> Vec<Embedding> {
        let mut phi = self.initial.clone();
        let mut used = vec![false; self.host.vertex_count()];
        for w in phi.iter().flatten() {
            used[*w] = true;
        }
        let mut out = Vec::new();
        if limit > 0 {
            self.extend(0, &mut phi, &mut used, &mut out, limit);
        }
        out
    }

    fn extend(
        &self,
        depth: usize,
        phi: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Embedding>,
        limit: usize,
    ) -> bool {
        if depth == self.order.len() {
            out.push(phi.iter().map(|w| w.unwrap()).collect());
            return out.len() >= limit;
        }
        let u = self.order[depth];
        let all: Vec<usize>;
        let candidates: &[usize] = match self.parent[depth] {
            Some(p) => self.host.neighbors(phi[p].unwrap()),
            None => {
                all = (0..self.host.vertex_count()).collect();
                &all
            }
        };
        for &w in candidates {
            if used[w] || self.blocked[w] || !self.consistent(u, w, phi) {
                continue;
            }
            phi[u] = Some(w);
            used[w] = true;
            let stop = self.extend(depth + 1, phi, used, out, limit);
            used[w] = false;
            phi[u] = None;
            if stop {
                return true;
            }
        }
        false
    }

    fn consistent(&self, u: usize, w: usize, phi: &[Option<usize>]) -> bool {
        phi.iter().enumerate().all(|(x, img)| match img {
            Some(z) => self.template.has_edge(u, x) == self.host.has_edge(w, *z),
            None => true,
        })
    }
}

/// A pair `(G̃, H̃)` of vertex sets in a host graph with `H̃ ⊆ G̃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedPair {
    g: Vec<usize>,
    h: Vec<usize>,
}

impl EmbeddedPair {
    pub fn new(mut g: Vec<usize>, mut h: Vec<usize>) -> Result<Self, ExtensionError> {
        g.sort_unstable();
        h.sort_unstable();
        if g.windows(2).any(|w| w[0] == w[1]) || h.windows(2).any(|w| w[0] == w[1]) {
            return Err(ExtensionError::Domain("repeated vertex in embedded pair".into()));
        }
        if let Some(x) = h.iter().find(|x| g.binary_search(x).is_err()) {
            return Err(ExtensionError::Domain(format!("vertex {x} of H is not in G")));
        }
        Ok(EmbeddedPair { g, h })
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }
}

type MemoKey = (usize, Vec<usize>, Vec<usize>);

/// Checks `(K,T)`-maximality of embedded pairs against a fixed family of rooted pairs.
///
/// `(G̃,H̃)` is `(K,T)`-maximal when no `T̃ ⊆ G̃` with `T̃ ⊄ H̃` has an exact
/// `(K,T)`-extension in `Γ − (G̃ \ T̃)` whose new vertices are not adjacent to
/// `G̃ \ T̃`. When `T` is empty no `T̃` qualifies and the pair is maximal.
pub struct MaximalityChecker<'a> {
    host: &'a Graph,
    family: &'a [RootedPair],
    memo: DashMap<MemoKey, bool>,
}

impl<'a> MaximalityChecker<'a> {
    pub fn new(host: &'a Graph, family: &'a [RootedPair]) -> Self {
        MaximalityChecker {
            host,
            family,
            memo: DashMap::new(),
        }
    }

    pub fn family(&self) -> &[RootedPair] {
        self.family
    }

    pub fn is_maximal(&self, pair: &EmbeddedPair, index: usize) -> Result<bool, ExtensionError> {
        let kt = self
            .family
            .get(index)
            .ok_or_else(|| ExtensionError::Domain(format!("no family member {index}")))?;
        let n = self.host.vertex_count();
        if let Some(x) = pair.g.iter().find(|&&x| x >= n) {
            return Err(ExtensionError::Domain(format!("vertex {x} out of range")));
        }
        let t = kt.roots().len();
        let (new_count, _) = kt.stats();
        if t == 0 || t > pair.g.len() || new_count > n - pair.g.len() {
            return Ok(true);
        }
        let mut in_g = vec![false; n];
        for &x in &pair.g {
            in_g[x] = true;
        }
        let mut tuple = Vec::with_capacity(t);
        Ok(!self.any_extension(pair, index, kt, &in_g, &mut tuple))
    }

    pub fn is_maximal_for_all(&self, pair: &EmbeddedPair) -> Result<bool, ExtensionError> {
        let results: Result<Vec<bool>, _> = (0..self.family.len())
            .into_par_iter()
            .map(|i| self.is_maximal(pair, i))
            .collect();
        Ok(results?.into_iter().all(|b| b))
    }

    fn any_extension(
        &self,
        pair: &EmbeddedPair,
        index: usize,
        kt: &RootedPair,
        in_g: &[bool],
        tuple: &mut Vec<usize>,
    ) -> bool {
        if tuple.len() == kt.roots().len() {
            if tuple.iter().all(|x| pair.h.binary_search(x).is_ok())
                || !spans_copy_of_roots(self.host, kt, tuple)
            {
                return false;
            }
            let key = (index, pair.g.clone(), tuple.clone());
            if let Some(hit) = self.memo.get(&key) {
                return *hit;
            }
            let mut avoid = in_g.to_vec();
            for &a in tuple.iter() {
                avoid[a] = false;
            }
            // New vertices lie outside G̃ and miss every vertex of G̃ \ T̃.
            let found = !Search::new(self.host, kt, tuple, in_g, &avoid).run(1).is_empty();
            self.memo.insert(key, found);
            return found;
        }
        for &x in &pair.g {
            if tuple.contains(&x) {
                continue;
            }
            tuple.push(x);
            let found = self.any_extension(pair, index, kt, in_g, tuple);
            tuple.pop();
            if found {
                return true;
            }
        }
        false
    }
}

pub fn is_kt_maximal(
    host: &Graph,
    pair: &EmbeddedPair,
    kt: &RootedPair,
) -> Result<bool, ExtensionError> {
    let family = std::slice::from_ref(kt);
    MaximalityChecker::new(host, family).is_maximal(pair, 0)
}
