use dashmap::DashMap;
use rayon::prelude::*;

use super::{partial_iso_check, Player, Side, SpoilerMove};
use crate::graph::{automorphisms, Graph};

/// Solver refuses `v(G) + v(H)` above this unless `k <= 4`.
pub const GAME_VERTEX_CAP: usize = 16;
/// Largest `|Aut G|·|Aut H|` for which memo keys are canonicalized.
pub const CANON_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("v(G) + v(H) = {total} exceeds {GAME_VERTEX_CAP} with k = {k} > 4")]
    CapExceeded { total: usize, k: usize },
    #[error("strategy tree exceeds {0} nodes")]
    TreeTooLarge(usize),
    #[error("illegal move in round {round}: {rule}")]
    IllegalMove { round: usize, rule: String },
}

type Key = (Vec<(u32, u32)>, usize);

/// Memoized minimax over game states. A state is the set of distinct picked
/// pairs `(g, h)`, which always forms a partial bijection, plus the number of
/// rounds left.
pub struct EhrSolver<'a> {
    g: &'a Graph,
    h: &'a Graph,
    k: usize,
    memo: DashMap<Key, bool>,
    auts: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
}

impl<'a> EhrSolver<'a> {
    pub fn new(g: &'a Graph, h: &'a Graph, k: usize) -> Result<Self, GameError> {
        let total = g.vertex_count() + h.vertex_count();
        if total > GAME_VERTEX_CAP && k > 4 {
            return Err(GameError::CapExceeded { total, k });
        }
        let auts = automorphisms(g, CANON_CAP).and_then(|ag| {
            let limit = CANON_CAP / ag.len().max(1);
            automorphisms(h, limit).map(|ah| (ag, ah))
        });
        Ok(EhrSolver {
            g,
            h,
            k,
            memo: DashMap::new(),
            auts,
        })
    }

    pub fn left(&self) -> &Graph {
        self.g
    }

    pub fn right(&self) -> &Graph {
        self.h
    }

    pub fn rounds(&self) -> usize {
        self.k
    }

    pub fn graph(&self, side: Side) -> &Graph {
        match side {
            Side::Left => self.g,
            Side::Right => self.h,
        }
    }

    pub fn winner(&self) -> Player {
        let start = Vec::new();
        if !partial_iso_check(self.g, self.h, &start) {
            return Player::Spoiler;
        }
        if self.k == 0 {
            return Player::Duplicator;
        }
        let moves = self.spoiler_moves();
        let dup = moves
            .par_iter()
            .all(|&mv| self.duplicator_survives(&start, self.k, mv));
        if dup {
            Player::Duplicator
        } else {
            Player::Spoiler
        }
    }

    /// All Spoiler moves in tie-break order: left graph first, then by vertex.
    pub fn spoiler_moves(&self) -> Vec<SpoilerMove> {
        let mut out = Vec::new();
        for side in [Side::Left, Side::Right] {
            for vertex in 0..self.graph(side).vertex_count() {
                out.push(SpoilerMove { side, vertex });
            }
        }
        out
    }

    /// Legal Duplicator answers to `mv`, ascending. Empty when Duplicator is stuck.
    pub fn responses(&self, pairs: &[(usize, usize)], mv: SpoilerMove) -> Vec<usize> {
        if let Some(forced) = forced_response(pairs, mv) {
            return vec![forced];
        }
        let taken: Vec<usize> = pairs.iter().map(|&p| pick(p, mv.side.other())).collect();
        (0..self.graph(mv.side.other()).vertex_count())
            .filter(|w| !taken.contains(w))
            .collect()
    }

    /// Does Duplicator win from `pairs` with `rounds` left (the pairs being a partial isomorphism)?
    pub fn duplicator_wins(&self, pairs: &[(usize, usize)], rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        let key = self.key(pairs, rounds);
        if let Some(hit) = self.memo.get(&key) {
            return *hit;
        }
        let result = self
            .spoiler_moves()
            .into_iter()
            .all(|mv| self.duplicator_survives(pairs, rounds, mv));
        self.memo.insert(key, result);
        result
    }

    fn duplicator_survives(&self, pairs: &[(usize, usize)], rounds: usize, mv: SpoilerMove) -> bool {
        self.winning_response(pairs, rounds, mv).is_some()
    }

    /// Smallest answer to `mv` that keeps Duplicator winning, if any.
    pub fn winning_response(
        &self,
        pairs: &[(usize, usize)],
        rounds: usize,
        mv: SpoilerMove,
    ) -> Option<usize> {
        if forced_response(pairs, mv).is_some() {
            let w = forced_response(pairs, mv).unwrap();
            return self.duplicator_wins(pairs, rounds - 1).then_some(w);
        }
        self.responses(pairs, mv).into_iter().find(|&w| {
            let pair = orient(mv, w);
            self.consistent(pairs, pair) && {
                let mut next = pairs.to_vec();
                next.push(pair);
                self.duplicator_wins(&next, rounds - 1)
            }
        })
    }

    /// Smallest Spoiler move after which every answer loses for Duplicator.
    pub fn winning_spoiler_move(&self, pairs: &[(usize, usize)], rounds: usize) -> Option<SpoilerMove> {
        if rounds == 0 {
            return None;
        }
        self.spoiler_moves()
            .into_iter()
            .find(|&mv| !self.duplicator_survives(pairs, rounds, mv))
    }

    fn consistent(&self, pairs: &[(usize, usize)], (a, b): (usize, usize)) -> bool {
        pairs
            .iter()
            .all(|&(c, d)| (a == c) == (b == d) && self.g.has_edge(a, c) == self.h.has_edge(b, d))
    }

    fn key(&self, pairs: &[(usize, usize)], rounds: usize) -> Key {
        let raw = |f: &dyn Fn(usize) -> usize, e: &dyn Fn(usize) -> usize| {
            let mut v: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (f(a) as u32, e(b) as u32)).collect();
            v.sort_unstable();
            v
        };
        let canon = match &self.auts {
            Some((ag, ah)) => {
                let mut best: Option<Vec<(u32, u32)>> = None;
                for p in ag {
                    for q in ah {
                        let cand = raw(&|a| p[a], &|b| q[b]);
                        if best.as_ref().map_or(true, |b| cand < *b) {
                            best = Some(cand);
                        }
                    }
                }
                best.unwrap()
            }
            None => raw(&|a| a, &|b| b),
        };
        (canon, rounds)
    }
}

pub(crate) fn pick(pair: (usize, usize), side: Side) -> usize {
    match side {
        Side::Left => pair.0,
        Side::Right => pair.1,
    }
}

pub(crate) fn orient(mv: SpoilerMove, answer: usize) -> (usize, usize) {
    match mv.side {
        Side::Left => (mv.vertex, answer),
        Side::Right => (answer, mv.vertex),
    }
}

/// The answer a repeated pick forces, if `mv` repeats an earlier pick.
pub(crate) fn forced_response(pairs: &[(usize, usize)], mv: SpoilerMove) -> Option<usize> {
    pairs
        .iter()
        .find(|&&p| pick(p, mv.side) == mv.vertex)
        .map(|&p| pick(p, mv.side.other()))
}

pub fn solve_ehr(g: &Graph, h: &Graph, k: usize) -> Result<Player, GameError> {
    Ok(EhrSolver::new(g, h, k)?.winner())
}

/// Plain minimax over pick sequences with the final check only; the oracle
/// for the memoized solver.
pub fn solve_ehr_unmemoized(g: &Graph, h: &Graph, k: usize) -> Player {
    fn dup_wins(g: &Graph, h: &Graph, xs: &mut Vec<usize>, ys: &mut Vec<usize>, left: usize) -> bool {
        if left == 0 {
            let pairs: Vec<(usize, usize)> = xs.iter().copied().zip(ys.iter().copied()).collect();
            return partial_iso_check(g, h, &pairs);
        }
        for spoiler_left in [true, false] {
            let (sg, dg) = if spoiler_left { (g, h) } else { (h, g) };
            for v in 0..sg.vertex_count() {
                let (own, other) = if spoiler_left { (&*xs, &*ys) } else { (&*ys, &*xs) };
                let answers: Vec<usize> = match own.iter().position(|&x| x == v) {
                    Some(i) => vec![other[i]],
                    None => (0..dg.vertex_count()).filter(|w| !other.contains(w)).collect(),
                };
                let mut survives = false;
                for w in answers {
                    let (x, y) = if spoiler_left { (v, w) } else { (w, v) };
                    xs.push(x);
                    ys.push(y);
                    survives = dup_wins(g, h, xs, ys, left - 1);
                    xs.pop();
                    ys.pop();
                    if survives {
                        break;
                    }
                }
                if !survives {
                    return false;
                }
            }
        }
        true
    }
    if dup_wins(g, h, &mut Vec::new(), &mut Vec::new(), k) {
        Player::Duplicator
    } else {
        Player::Spoiler
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::nonisomorphic_graphs;

    #[test]
    fn known_examples() {
        let k3 = Graph::complete(3);
        let k4 = Graph::complete(4);
        assert_eq!(solve_ehr(&k3, &k4, 3).unwrap(), Player::Duplicator);
        assert_eq!(solve_ehr(&k3, &k4, 4).unwrap(), Player::Spoiler);
        assert_eq!(solve_ehr(&Graph::cycle(5), &Graph::cycle(6), 3).unwrap(), Player::Spoiler);
        assert_eq!(solve_ehr(&k3, &k4, 0).unwrap(), Player::Duplicator);
        for k in 0..=4 {
            let c = Graph::cycle(6);
            assert_eq!(solve_ehr(&c, &c, k).unwrap(), Player::Duplicator);
        }
    }

    #[test]
    fn cap() {
        let big = Graph::cycle(10);
        assert!(solve_ehr(&big, &big, 5).is_err());
        assert_eq!(solve_ehr(&big, &big, 2).unwrap(), Player::Duplicator);
    }

    #[test]
    fn memo_matches_reference_small() {
        let graphs: Vec<Graph> = (1..=3).flat_map(nonisomorphic_graphs).collect();
        for g in &graphs {
            for h in &graphs {
                for k in 0..=3 {
                    assert_eq!(solve_ehr(g, h, k).unwrap(), solve_ehr_unmemoized(g, h, k), "{g:?} {h:?} {k}");
                }
            }
        }
    }

    #[test]
    fn monotone_and_symmetric() {
        let graphs: Vec<Graph> = (1..=4).flat_map(nonisomorphic_graphs).collect();
        for g in graphs.iter().step_by(3) {
            for h in &graphs {
                let mut spoiler = false;
                for k in 0..=3 {
                    let w = solve_ehr(g, h, k).unwrap();
                    assert_eq!(w, solve_ehr(h, g, k).unwrap());
                    if spoiler {
                        assert_eq!(w, Player::Spoiler);
                    }
                    spoiler = w == Player::Spoiler;
                }
            }
        }
    }
}
