//! Tarskian evaluation by quantifier expansion.
//!
//! The formula is compiled into an arena where every binder owns a fresh
//! slot, so shadowing needs no special handling at run time. Quantifier nodes
//! are memoized on the values of their free slots.

use std::collections::{BTreeMap, HashMap};

use super::Formula;
use crate::graph::Graph;

pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value for free variable {0}")]
    Unassigned(String),
    #[error("variable {var} assigned vertex {vertex}, graph has {n}")]
    OutOfRange { var: String, vertex: usize, n: usize },
    #[error("evaluation budget of {0} node visits exceeded")]
    BudgetExceeded(u64),
}

pub fn evaluate(
    f: &Formula,
    g: &Graph,
    assignment: &BTreeMap<String, usize>,
) -> Result<bool, EvalError> {
    evaluate_with_budget(f, g, assignment, DEFAULT_EVAL_BUDGET)
}

pub fn evaluate_with_budget(
    f: &Formula,
    g: &Graph,
    assignment: &BTreeMap<String, usize>,
    budget: u64,
) -> Result<bool, EvalError> {
    let mut arena = Arena::default();
    let mut scope: Vec<(String, usize)> = Vec::new();
    let mut env = Vec::new();
    for v in f.free_variables() {
        let &vertex = assignment.get(&v).ok_or_else(|| EvalError::Unassigned(v.clone()))?;
        if vertex >= g.vertex_count() {
            return Err(EvalError::OutOfRange {
                var: v,
                vertex,
                n: g.vertex_count(),
            });
        }
        scope.push((v, env.len()));
        env.push(vertex);
    }
    let root = arena.compile(f, &mut scope, &mut env.len());
    env.resize(arena.slots, 0);
    let mut run = Run {
        arena: &arena,
        g,
        memo: HashMap::new(),
        visits: 0,
        budget,
    };
    run.eval(root, &mut env)
}

enum Node {
    Eq(usize, usize),
    Adj(usize, usize),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Exists(usize, usize),
    Forall(usize, usize),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    /// Free slots of each node, sorted.
    free: Vec<Vec<usize>>,
    slots: usize,
}

impl Arena {
    fn lookup(scope: &[(String, usize)], v: &str) -> usize {
        scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|(_, s)| *s)
            .expect("free variables are pre-bound")
    }

    fn push(&mut self, node: Node, free: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.free.push(free);
        self.nodes.len() - 1
    }

    fn union(&self, ids: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = ids.iter().flat_map(|&i| self.free[i].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn compile(&mut self, f: &Formula, scope: &mut Vec<(String, usize)>, next: &mut usize) -> usize {
        self.slots = self.slots.max(*next);
        match f {
            Formula::Eq(a, b) | Formula::Adj(a, b) => {
                let (sa, sb) = (Self::lookup(scope, a), Self::lookup(scope, b));
                let mut free = vec![sa, sb];
                free.sort_unstable();
                free.dedup();
                let node = if matches!(f, Formula::Eq(..)) {
                    Node::Eq(sa, sb)
                } else {
                    Node::Adj(sa, sb)
                };
                self.push(node, free)
            }
            Formula::Not(g) => {
                let c = self.compile(g, scope, next);
                let free = self.free[c].clone();
                self.push(Node::Not(c), free)
            }
            Formula::And(fs) | Formula::Or(fs) => {
                let ids: Vec<usize> = fs.iter().map(|g| self.compile(g, scope, next)).collect();
                let free = self.union(&ids);
                let node = if matches!(f, Formula::And(_)) {
                    Node::And(ids)
                } else {
                    Node::Or(ids)
                };
                self.push(node, free)
            }
            Formula::Implies(a, b) => {
                let ia = self.compile(a, scope, next);
                let ib = self.compile(b, scope, next);
                let free = self.union(&[ia, ib]);
                self.push(Node::Implies(ia, ib), free)
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let slot = *next;
                *next += 1;
                self.slots = self.slots.max(*next);
                scope.push((v.clone(), slot));
                let body = self.compile(g, scope, next);
                scope.pop();
                let free: Vec<usize> = self.free[body].iter().copied().filter(|&s| s != slot).collect();
                let node = if matches!(f, Formula::Exists(..)) {
                    Node::Exists(slot, body)
                } else {
                    Node::Forall(slot, body)
                };
                self.push(node, free)
            }
        }
    }
}

struct Run<'a> {
    arena: &'a Arena,
    g: &'a Graph,
    memo: HashMap<(usize, Vec<usize>), bool>,
    visits: u64,
    budget: u64,
}

impl Run<'_> {
    fn eval(&mut self, id: usize, env: &mut Vec<usize>) -> Result<bool, EvalError> {
        self.visits += 1;
        if self.visits > self.budget {
            return Err(EvalError::BudgetExceeded(self.budget));
        }
        let arena = self.arena;
        Ok(match &arena.nodes[id] {
            Node::Eq(a, b) => env[*a] == env[*b],
            Node::Adj(a, b) => self.g.has_edge(env[*a], env[*b]),
            Node::Not(c) => !self.eval(*c, env)?,
            Node::And(cs) => {
                for &c in cs {
                    if !self.eval(c, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Node::Or(cs) => {
                for &c in cs {
                    if self.eval(c, env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Node::Implies(a, b) => !self.eval(*a, env)? || self.eval(*b, env)?,
            Node::Exists(slot, body) | Node::Forall(slot, body) => {
                let want = matches!(arena.nodes[id], Node::Exists(..));
                let key = (id, arena.free[id].iter().map(|&s| env[s]).collect::<Vec<_>>());
                if let Some(&hit) = self.memo.get(&key) {
                    return Ok(hit);
                }
                let mut result = !want;
                for w in 0..self.g.vertex_count() {
                    env[*slot] = w;
                    if self.eval(*body, env)? == want {
                        result = want;
                        break;
                    }
                }
                self.memo.insert(key, result);
                result
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::nonisomorphic_graphs;
    use crate::logic::{build_k, build_mk, parse_formula, parse_sentence};
    use proptest::prelude::*;

    fn assign(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    /// Direct recursive semantics with an explicit environment.
    fn oracle(f: &Formula, g: &Graph, env: &mut Vec<(String, usize)>) -> bool {
        let val = |v: &str, env: &Vec<(String, usize)>| env.iter().rev().find(|(n, _)| n == v).unwrap().1;
        match f {
            Formula::Eq(a, b) => val(a, env) == val(b, env),
            Formula::Adj(a, b) => g.has_edge(val(a, env), val(b, env)),
            Formula::Not(h) => !oracle(h, g, env),
            Formula::And(fs) => fs.iter().all(|h| oracle(h, g, env)),
            Formula::Or(fs) => fs.iter().any(|h| oracle(h, g, env)),
            Formula::Implies(a, b) => !oracle(a, g, env) || oracle(b, g, env),
            Formula::Exists(v, h) | Formula::Forall(v, h) => {
                let results: Vec<bool> = (0..g.vertex_count())
                    .map(|w| {
                        env.push((v.clone(), w));
                        let r = oracle(h, g, env);
                        env.pop();
                        r
                    })
                    .collect();
                if matches!(f, Formula::Exists(..)) {
                    results.iter().any(|&r| r)
                } else {
                    results.iter().all(|&r| r)
                }
            }
        }
    }

    #[test]
    fn clique_examples() {
        let k3 = build_k(3).unwrap();
        let a = assign(&[("x1", 0), ("x2", 1), ("x3", 2)]);
        assert!(evaluate(&k3, &Graph::complete(3), &a).unwrap());
        assert!(!evaluate(&k3, &Graph::path(3), &a).unwrap());
        // Two triangles sharing the edge 1-2.
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mk3 = build_mk(3).unwrap();
        assert!(!evaluate(&mk3, &diamond, &a).unwrap());
        assert!(evaluate(&mk3, &Graph::complete(3), &a).unwrap());
    }

    #[test]
    fn errors() {
        let f = parse_formula("(adj x y)").unwrap();
        assert_eq!(
            evaluate(&f, &Graph::path(2), &assign(&[("x", 0)])),
            Err(EvalError::Unassigned("y".into()))
        );
        assert!(matches!(
            evaluate(&f, &Graph::path(2), &assign(&[("x", 0), ("y", 5)])),
            Err(EvalError::OutOfRange { .. })
        ));
        let deep = parse_sentence("(forall a (forall b (forall c (or (adj a b) (= c c)))))").unwrap();
        assert_eq!(
            evaluate_with_budget(&deep, &Graph::empty(10), &BTreeMap::new(), 50),
            Err(EvalError::BudgetExceeded(50))
        );
    }

    #[test]
    fn shadowing() {
        let f = parse_formula("(and (adj x y) (exists x (not (adj x y))))").unwrap();
        let g = Graph::path(3);
        assert!(evaluate(&f, &g, &assign(&[("x", 0), ("y", 1)])).unwrap());
        assert!(evaluate(&f, &Graph::complete(3), &assign(&[("x", 0), ("y", 1)])).unwrap());
        let inner = parse_formula("(exists x (and (= x y) (exists x (not (= x y)))))").unwrap();
        assert!(evaluate(&inner, &Graph::path(2), &assign(&[("y", 0)])).unwrap());
        assert!(!evaluate(&inner, &Graph::empty(1), &assign(&[("y", 0)])).unwrap());
        let empty = Graph::empty(0);
        assert!(!evaluate(&parse_sentence("(exists x (= x x))").unwrap(), &empty, &BTreeMap::new()).unwrap());
        assert!(evaluate(&parse_sentence("(forall x (adj x x))").unwrap(), &empty, &BTreeMap::new()).unwrap());
    }

    fn depth2_sentence() -> impl Strategy<Value = Formula> {
        let var = prop::sample::select(vec!["x", "y"]).prop_map(String::from);
        let atom = prop_oneof![
            (var.clone(), var.clone()).prop_map(|(a, b)| Formula::Eq(a, b)),
            (var.clone(), var.clone()).prop_map(|(a, b)| Formula::Adj(a, b)),
        ];
        let qf = atom.prop_recursive(2, 8, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::And),
                prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::Or),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        });
        let inner_q = (any::<bool>(), qf.clone()).prop_map(|(e, f)| {
            if e { Formula::exists("y", f) } else { Formula::forall("y", f) }
        });
        let body = prop_oneof![
            inner_q.clone(),
            (inner_q, qf).prop_map(|(a, b)| Formula::And(vec![a, b])),
        ];
        (any::<bool>(), body).prop_map(|(e, f)| if e { Formula::exists("x", f) } else { Formula::forall("x", f) })
    }

    proptest! {
        #[test]
        fn matches_oracle_on_small_graphs(f in depth2_sentence()) {
            // Sentences may leave y free at the top level only if unbound; skip those.
            prop_assume!(f.is_sentence());
            prop_assert!(f.quantifier_depth() <= 2);
            for n in 0..=4 {
                for g in nonisomorphic_graphs(n) {
                    let fast = evaluate(&f, &g, &BTreeMap::new()).unwrap();
                    prop_assert_eq!(fast, oracle(&f, &g, &mut Vec::new()), "{} on {:?}", f, g);
                }
            }
        }
    }
}
