use serde::{Deserialize, Serialize};

use super::solver::{forced_response, orient, EhrSolver, GameError};
use super::{partial_iso_check, Player, SpoilerMove};

pub const DEFAULT_TREE_CAP: usize = 200_000;

/// A move supplied by whoever plays against a strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdversaryMove {
    Spoiler(SpoilerMove),
    Duplicator(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub round: usize,
    pub spoiler: SpoilerMove,
    /// `None` when Duplicator had no legal answer.
    pub duplicator: Option<usize>,
    pub forced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub k: usize,
    pub rounds: Vec<Round>,
    pub stuck: bool,
    pub final_check: bool,
    pub winner: Player,
}

/// Something that can answer for one player given the history so far.
trait Policy {
    fn player(&self) -> Player;
    fn spoiler_move(&self, history: &[Round]) -> Result<SpoilerMove, GameError>;
    fn duplicator_response(&self, history: &[Round], mv: SpoilerMove) -> Result<Option<usize>, GameError>;
}

fn distinct_pairs(history: &[Round]) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for r in history {
        if let Some(w) = r.duplicator {
            let p = orient(r.spoiler, w);
            if !pairs.contains(&p) {
                pairs.push(p);
            }
        }
    }
    pairs
}

/// Optimal play computed on demand from a solver. Ties go to the smallest
/// move (left graph first, then vertex id).
pub struct Strategy<'s, 'g> {
    solver: &'s EhrSolver<'g>,
    player: Player,
}

impl<'s, 'g> Strategy<'s, 'g> {
    pub fn new(solver: &'s EhrSolver<'g>, player: Player) -> Self {
        Strategy { solver, player }
    }

    /// The strategy of whoever wins the game.
    pub fn winning(solver: &'s EhrSolver<'g>) -> Self {
        Strategy::new(solver, solver.winner())
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn solver(&self) -> &EhrSolver<'g> {
        self.solver
    }

    pub fn choose_spoiler_move(&self, pairs: &[(usize, usize)], rounds: usize) -> SpoilerMove {
        let intact = partial_iso_check(self.solver.left(), self.solver.right(), pairs);
        intact
            .then(|| self.solver.winning_spoiler_move(pairs, rounds))
            .flatten()
            .unwrap_or_else(|| self.solver.spoiler_moves()[0])
    }

    pub fn choose_response(&self, pairs: &[(usize, usize)], rounds: usize, mv: SpoilerMove) -> Option<usize> {
        let legal = self.solver.responses(pairs, mv);
        let first = legal.first().copied()?;
        let intact = partial_iso_check(self.solver.left(), self.solver.right(), pairs);
        Some(
            intact
                .then(|| self.solver.winning_response(pairs, rounds, mv))
                .flatten()
                .unwrap_or(first),
        )
    }

    /// Materializes the strategy as an explicit tree of at most `cap` nodes.
    pub fn tree(&self, cap: usize) -> Result<StrategyTree, GameError> {
        let mut count = 0;
        let root = if self.solver.rounds() == 0 {
            StrategyNode { branches: Vec::new() }
        } else {
            self.node(&[], self.solver.rounds(), cap, &mut count)?
        };
        Ok(StrategyTree {
            player: self.player,
            k: self.solver.rounds(),
            root,
        })
    }

    fn node(
        &self,
        pairs: &[(usize, usize)],
        rounds: usize,
        cap: usize,
        count: &mut usize,
    ) -> Result<StrategyNode, GameError> {
        *count += 1;
        if *count > cap {
            return Err(GameError::TreeTooLarge(cap));
        }
        let mut branches = Vec::new();
        let follow = |mv: SpoilerMove, w: Option<usize>, count: &mut usize| -> Result<StrategyBranch, GameError> {
            let next = match w {
                Some(w) if rounds > 1 => {
                    let mut np = pairs.to_vec();
                    let p = orient(mv, w);
                    if !np.contains(&p) {
                        np.push(p);
                    }
                    let broken = !partial_iso_check(self.solver.left(), self.solver.right(), &np);
                    if broken && self.player == Player::Spoiler {
                        None
                    } else {
                        Some(self.node(&np, rounds - 1, cap, count)?)
                    }
                }
                _ => None,
            };
            Ok(StrategyBranch {
                spoiler: mv,
                duplicator: w,
                next,
            })
        };
        match self.player {
            Player::Duplicator => {
                for mv in self.solver.spoiler_moves() {
                    let w = self.choose_response(pairs, rounds, mv);
                    branches.push(follow(mv, w, count)?);
                }
            }
            Player::Spoiler => {
                let mv = self.choose_spoiler_move(pairs, rounds);
                let answers = self.solver.responses(pairs, mv);
                if answers.is_empty() {
                    branches.push(follow(mv, None, count)?);
                }
                for w in answers {
                    branches.push(follow(mv, Some(w), count)?);
                }
            }
        }
        Ok(StrategyNode { branches })
    }
}

impl Policy for Strategy<'_, '_> {
    fn player(&self) -> Player {
        self.player
    }

    fn spoiler_move(&self, history: &[Round]) -> Result<SpoilerMove, GameError> {
        Ok(self.choose_spoiler_move(&distinct_pairs(history), self.solver.rounds() - history.len()))
    }

    fn duplicator_response(&self, history: &[Round], mv: SpoilerMove) -> Result<Option<usize>, GameError> {
        Ok(self.choose_response(&distinct_pairs(history), self.solver.rounds() - history.len(), mv))
    }
}

/// An explicit strategy for one player, serializable as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyTree {
    pub player: Player,
    pub k: usize,
    pub root: StrategyNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyNode {
    pub branches: Vec<StrategyBranch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyBranch {
    pub spoiler: SpoilerMove,
    pub duplicator: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next: Option<StrategyNode>,
}

impl StrategyTree {
    pub fn node_count(&self) -> usize {
        fn count(n: &StrategyNode) -> usize {
            1 + n.branches.iter().filter_map(|b| b.next.as_ref()).map(count).sum::<usize>()
        }
        count(&self.root)
    }

    fn walk(&self, history: &[Round]) -> Result<&StrategyNode, GameError> {
        let mut node = &self.root;
        for (i, r) in history.iter().enumerate() {
            let branch = node
                .branches
                .iter()
                .find(|b| b.spoiler == r.spoiler && b.duplicator == r.duplicator)
                .and_then(|b| b.next.as_ref());
            node = branch.ok_or_else(|| GameError::IllegalMove {
                round: i + 1,
                rule: "position not covered by the strategy tree".into(),
            })?;
        }
        Ok(node)
    }
}

impl Policy for StrategyTree {
    fn player(&self) -> Player {
        self.player
    }

    fn spoiler_move(&self, history: &[Round]) -> Result<SpoilerMove, GameError> {
        let node = self.walk(history)?;
        node.branches.first().map(|b| b.spoiler).ok_or_else(|| GameError::IllegalMove {
            round: history.len() + 1,
            rule: "strategy tree has no move here".into(),
        })
    }

    fn duplicator_response(&self, history: &[Round], mv: SpoilerMove) -> Result<Option<usize>, GameError> {
        let node = self.walk(history)?;
        node.branches
            .iter()
            .find(|b| b.spoiler == mv)
            .map(|b| b.duplicator)
            .ok_or_else(|| GameError::IllegalMove {
                round: history.len() + 1,
                rule: "strategy tree has no answer to this move".into(),
            })
    }
}

/// Plays `strategy` against the given adversary moves, one per round.
pub fn replay_strategy(
    strategy: &Strategy<'_, '_>,
    adversary: &[AdversaryMove],
) -> Result<Transcript, GameError> {
    replay(strategy.solver(), strategy, adversary)
}

impl StrategyTree {
    pub fn replay(&self, solver: &EhrSolver<'_>, adversary: &[AdversaryMove]) -> Result<Transcript, GameError> {
        replay(solver, self, adversary)
    }
}

fn replay(solver: &EhrSolver<'_>, policy: &dyn Policy, adversary: &[AdversaryMove]) -> Result<Transcript, GameError> {
    let k = solver.rounds();
    let mut history: Vec<Round> = Vec::new();
    let mut stuck = false;
    let mut moves = adversary.iter();
    for round in 1..=k {
        let illegal = |rule: &str| GameError::IllegalMove {
            round,
            rule: rule.to_string(),
        };
        let pairs = distinct_pairs(&history);
        let mv = match policy.player() {
            Player::Duplicator => match moves.next() {
                Some(AdversaryMove::Spoiler(mv)) => *mv,
                Some(AdversaryMove::Duplicator(_)) => return Err(illegal("expected a Spoiler move")),
                None => return Err(illegal("adversary ran out of moves")),
            },
            Player::Spoiler => policy.spoiler_move(&history)?,
        };
        if mv.vertex >= solver.graph(mv.side).vertex_count() {
            return Err(illegal("Spoiler must pick a vertex of the chosen graph"));
        }
        let forced = forced_response(&pairs, mv);
        let legal = solver.responses(&pairs, mv);
        let answer = if legal.is_empty() {
            None
        } else {
            match policy.player() {
                Player::Duplicator => policy.duplicator_response(&history, mv)?,
                Player::Spoiler => match moves.next() {
                    Some(AdversaryMove::Duplicator(w)) => Some(*w),
                    Some(AdversaryMove::Spoiler(_)) => return Err(illegal("expected a Duplicator move")),
                    None => return Err(illegal("adversary ran out of moves")),
                },
            }
        };
        if let Some(w) = answer {
            if w >= solver.graph(mv.side.other()).vertex_count() {
                return Err(illegal("Duplicator must pick a vertex of the other graph"));
            }
            if let Some(f) = forced {
                if w != f {
                    return Err(illegal("a repeated pick must be answered with the vertex paired with it"));
                }
            } else if !legal.contains(&w) {
                return Err(illegal("a fresh pick must be answered with a fresh vertex"));
            }
        }
        history.push(Round {
            round,
            spoiler: mv,
            duplicator: answer,
            forced: forced.is_some(),
        });
        if answer.is_none() {
            stuck = true;
            break;
        }
    }
    if moves.next().is_some() {
        return Err(GameError::IllegalMove {
            round: history.len() + 1,
            rule: "moves supplied after the game ended".into(),
        });
    }
    let pairs = distinct_pairs(&history);
    let final_check = !stuck && partial_iso_check(solver.left(), solver.right(), &pairs);
    Ok(Transcript {
        k,
        rounds: history,
        stuck,
        final_check,
        winner: if final_check { Player::Duplicator } else { Player::Spoiler },
    })
}

/// Both players follow their optimal strategies.
pub fn optimal_transcript(solver: &EhrSolver<'_>) -> Transcript {
    let spoiler = Strategy::new(solver, Player::Spoiler);
    let duplicator = Strategy::new(solver, Player::Duplicator);
    let mut history = Vec::new();
    let mut stuck = false;
    for round in 1..=solver.rounds() {
        let mv = spoiler.spoiler_move(&history).expect("lazy strategies always move");
        let pairs = distinct_pairs(&history);
        let forced = forced_response(&pairs, mv).is_some();
        let answer = duplicator.duplicator_response(&history, mv).expect("lazy strategies always move");
        history.push(Round {
            round,
            spoiler: mv,
            duplicator: answer,
            forced,
        });
        if answer.is_none() {
            stuck = true;
            break;
        }
    }
    let final_check = !stuck && partial_iso_check(solver.left(), solver.right(), &distinct_pairs(&history));
    Transcript {
        k: solver.rounds(),
        rounds: history,
        stuck,
        final_check,
        winner: if final_check { Player::Duplicator } else { Player::Spoiler },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Side;
    use crate::graph::Graph;

    fn spoiler(side: Side, vertex: usize) -> AdversaryMove {
        AdversaryMove::Spoiler(SpoilerMove { side, vertex })
    }

    #[test]
    fn identity_game_replays() {
        let g = Graph::path(4);
        let solver = EhrSolver::new(&g, &g, 2).unwrap();
        let dup = Strategy::winning(&solver);
        assert_eq!(dup.player(), Player::Duplicator);
        for a in 0..4 {
            for side in [Side::Left, Side::Right] {
                for b in 0..4 {
                    let t = replay_strategy(&dup, &[spoiler(side, a), spoiler(side.other(), b)]).unwrap();
                    assert!(t.final_check);
                    assert_eq!(t.winner, Player::Duplicator);
                }
            }
        }
    }

    #[test]
    fn spoiler_beats_any_duplicator_on_k3_k4() {
        let (k3, k4) = (Graph::complete(3), Graph::complete(4));
        let solver = EhrSolver::new(&k3, &k4, 4).unwrap();
        let sp = Strategy::winning(&solver);
        assert_eq!(sp.player(), Player::Spoiler);
        let t = optimal_transcript(&solver);
        assert_eq!(t.winner, Player::Spoiler);
        assert!(!t.final_check);
        let tree = sp.tree(DEFAULT_TREE_CAP).unwrap();
        // Every legal Duplicator line loses against the lazy strategy.
        fn lines(solver: &EhrSolver<'_>, sp: &Strategy<'_, '_>, history: &mut Vec<Round>, out: &mut Vec<Vec<AdversaryMove>>) {
            if history.len() == solver.rounds() {
                out.push(history.iter().map(|r| AdversaryMove::Duplicator(r.duplicator.unwrap())).collect());
                return;
            }
            let mv = sp.spoiler_move(history).unwrap();
            let legal = solver.responses(&distinct_pairs(history), mv);
            if legal.is_empty() {
                out.push(history.iter().map(|r| AdversaryMove::Duplicator(r.duplicator.unwrap())).collect());
            }
            for w in legal {
                history.push(Round { round: history.len() + 1, spoiler: mv, duplicator: Some(w), forced: false });
                lines(solver, sp, history, out);
                history.pop();
            }
        }
        let mut all = Vec::new();
        lines(&solver, &sp, &mut Vec::new(), &mut all);
        assert!(all.len() > 10);
        let mut via_tree = 0;
        for line in &all {
            assert_eq!(replay_strategy(&sp, line).unwrap().winner, Player::Spoiler);
            if let Ok(t) = tree.replay(&solver, line) {
                assert_eq!(t.winner, Player::Spoiler);
                via_tree += 1;
            }
        }
        assert!(via_tree > 0);
    }

    #[test]
    fn rejects_illegal_moves() {
        let (k3, k4) = (Graph::complete(3), Graph::complete(4));
        let solver = EhrSolver::new(&k3, &k4, 2).unwrap();
        let sp = Strategy::new(&solver, Player::Spoiler);
        let first = sp.choose_spoiler_move(&[], 2);
        let other_side = solver.graph(first.side.other()).vertex_count();
        let err = replay_strategy(&sp, &[AdversaryMove::Duplicator(other_side)]).unwrap_err();
        assert!(err.to_string().contains("other graph"));
        let dup = Strategy::new(&solver, Player::Duplicator);
        let err = replay_strategy(&dup, &[spoiler(Side::Left, 7), spoiler(Side::Left, 0)]).unwrap_err();
        assert!(err.to_string().contains("chosen graph"));
        assert!(replay_strategy(&dup, &[spoiler(Side::Left, 0)]).is_err());
        assert!(replay_strategy(&dup, &[AdversaryMove::Duplicator(0), spoiler(Side::Left, 0)]).is_err());
    }

    #[test]
    fn forced_repeat_rule() {
        let (k3, k4) = (Graph::complete(3), Graph::complete(4));
        let solver = EhrSolver::new(&k4, &k3, 2).unwrap();
        let sp = Strategy::new(&solver, Player::Spoiler);
        let mv = sp.choose_spoiler_move(&[], 2);
        let legal = solver.responses(&[], mv);
        // Whatever Spoiler does in round 2, a wrong answer to a repeat or a reused vertex is rejected.
        let t = replay_strategy(&sp, &[AdversaryMove::Duplicator(legal[0]), AdversaryMove::Duplicator(legal[0])]);
        match t {
            Ok(t) => assert!(t.rounds[1].forced),
            Err(e) => assert!(e.to_string().contains("fresh")),
        }
    }

    #[test]
    fn empty_game_and_tree_json() {
        let g = Graph::path(3);
        let h = Graph::complete(3);
        let solver = EhrSolver::new(&g, &h, 0).unwrap();
        let t = optimal_transcript(&solver);
        assert_eq!(t.winner, Player::Duplicator);
        assert!(t.rounds.is_empty());
        let solver = EhrSolver::new(&g, &h, 2).unwrap();
        let tree = Strategy::winning(&solver).tree(1000).unwrap();
        let json = serde_json::to_string(&tree).unwrap();
        let back: StrategyTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tree);
        assert!(Strategy::winning(&solver).tree(1).is_err());
        assert!(tree.node_count() > 1);
    }

    #[test]
    fn stuck_duplicator() {
        // Spoiler picks two distinct vertices of K2 while K1 has only one.
        let (a, b) = (Graph::complete(2), Graph::empty(1));
        let solver = EhrSolver::new(&a, &b, 2).unwrap();
        let t = optimal_transcript(&solver);
        assert!(t.stuck);
        assert_eq!(t.winner, Player::Spoiler);
        assert_eq!(t.rounds.last().unwrap().duplicator, None);
    }
}
