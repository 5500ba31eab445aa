//! The Ehrenfeucht game `EHR(G, H, k)`.
//!
//! Each round Spoiler picks a vertex in either graph and Duplicator answers in
//! the other. A repeated pick must be answered with the vertex paired with it
//! earlier; a fresh pick must be answered with a fresh vertex, and if none is
//! left Spoiler wins at once. After `k` rounds Duplicator wins iff the distinct
//! picked pairs form a partial isomorphism.

mod solver;
mod strategy;

use serde::{Deserialize, Serialize};

pub use solver::{solve_ehr, solve_ehr_unmemoized, EhrSolver, GameError, CANON_CAP, GAME_VERTEX_CAP};
pub use strategy::{
    optimal_transcript, replay_strategy, AdversaryMove, Round, Strategy, StrategyBranch,
    StrategyNode, StrategyTree, Transcript, DEFAULT_TREE_CAP,
};

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Spoiler,
    Duplicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpoilerMove {
    pub side: Side,
    pub vertex: usize,
}

/// True iff the distinct pairs define a bijection that preserves adjacency both ways.
pub fn partial_iso_check(g: &Graph, h: &Graph, pairs: &[(usize, usize)]) -> bool {
    let mut distinct: Vec<(usize, usize)> = pairs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for (i, &(a, b)) in distinct.iter().enumerate() {
        if a >= g.vertex_count() || b >= h.vertex_count() {
            return false;
        }
        for &(c, d) in &distinct[..i] {
            if (a == c) != (b == d) || g.has_edge(a, c) != h.has_edge(b, d) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_iso_examples() {
        let k3 = Graph::complete(3);
        let k4 = Graph::complete(4);
        assert!(partial_iso_check(&k3, &k4, &[(0, 3), (1, 0), (2, 1)]));
        assert!(!partial_iso_check(&k3, &k4, &[(0, 1), (0, 2)]));
        assert!(!partial_iso_check(&k3, &Graph::path(3), &[(0, 0), (1, 2)]));
        assert!(partial_iso_check(&k3, &k4, &[(0, 1), (0, 1)]));
        assert!(partial_iso_check(&k3, &k4, &[]));
        assert!(!partial_iso_check(&k3, &k4, &[(5, 0)]));
    }
}
