//! First-order formulas over the graph signature `{=, adj}`.
//!
//! Text syntax is S-expressions:
//!
//! ```text
//! formula := (= v w) | (adj v w) | (not f) | (and f*) | (or f*)
//!          | (implies f f) | (exists v f) | (forall v f)
//! v       := [A-Za-z_][A-Za-z0-9_']*
//! ```
//!
//! `;` starts a comment running to the end of the line. `(and)` is true and
//! `(or)` is false.

mod builders;
mod eval;
mod mchain;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use builders::{
    build_d, build_k, build_mk, build_ni, build_property_a, d_formula, k_formula, mk_formula,
    ni_formula, property_a_l, BuildError, MK_CAP,
};
pub use eval::{evaluate, evaluate_with_budget, EvalError, DEFAULT_EVAL_BUDGET};
pub use mchain::{check_m_chain_exists, MChainError, M_CHAIN_CAP};
pub use parse::{parse_formula, parse_sentence, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(String, String),
    Adj(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn adj(a: impl Into<String>, b: impl Into<String>) -> Self {
        Formula::Adj(a.into(), b.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(f))
    }

    /// `∃v1 ∃v2 … f`, innermost last.
    pub fn exists_all<S: AsRef<str>>(vars: &[S], f: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(f, |acc, v| Formula::exists(v.as_ref(), acc))
    }

    pub fn forall_all<S: AsRef<str>>(vars: &[S], f: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(f, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut note = |v: &str, bound: &Vec<&str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Adj(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    pub fn quantifier_depth(&self) -> usize {
        quantifier_depth(self)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Maximum nesting of quantifiers.
pub fn quantifier_depth(f: &Formula) -> usize {
    match f {
        Formula::Eq(..) | Formula::Adj(..) => 0,
        Formula::Not(g) => quantifier_depth(g),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().map(quantifier_depth).max().unwrap_or(0),
        Formula::Implies(a, b) => quantifier_depth(a).max(quantifier_depth(b)),
        Formula::Exists(_, g) | Formula::Forall(_, g) => 1 + quantifier_depth(g),
    }
}

impl fmt::Display for Formula {
    /// Canonical form: single spaces, no line breaks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Adj(a, b) => write!(f, "(adj {a} {b})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(fs) | Formula::Or(fs) => {
                f.write_str(if matches!(self, Formula::And(_)) { "(and" } else { "(or" })?;
                for g in fs {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Exists(v, g) => write!(f, "(exists {v} {g})"),
            Formula::Forall(v, g) => write!(f, "(forall {v} {g})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_respect_scope() {
        let f = Formula::And(vec![
            Formula::exists("x", Formula::adj("x", "y")),
            Formula::eq("x", "z"),
        ]);
        let free: Vec<_> = f.free_variables().into_iter().collect();
        assert_eq!(free, ["x", "y", "z"]);
        assert!(Formula::forall("x", Formula::eq("x", "x")).is_sentence());
    }

    #[test]
    fn depth_examples() {
        let f: Formula = "(exists x (exists y (adj x y)))".parse().unwrap();
        assert_eq!(quantifier_depth(&f), 2);
        let g: Formula = "(and (exists x (= x x)) (forall y (exists z (adj y z))))".parse().unwrap();
        assert_eq!(g.quantifier_depth(), 2);
        assert_eq!(Formula::And(vec![]).quantifier_depth(), 0);
    }

    #[test]
    fn display_is_canonical() {
        let f: Formula = "( forall  x\n (implies (adj x x) (or)) )".parse().unwrap();
        assert_eq!(f.to_string(), "(forall x (implies (adj x x) (or)))");
    }
}
