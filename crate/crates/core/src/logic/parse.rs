use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unbound variable {0}")]
    Unbound(String),
}

/// Parses a formula; free variables are allowed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let f = p.formula()?;
    p.skip_space();
    if p.pos < text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

/// Parses a formula and rejects it unless every variable is bound.
pub fn parse_sentence(text: &str) -> Result<Formula, ParseError> {
    let f = parse_formula(text)?;
    match f.free_variables().into_iter().next() {
        Some(v) => Err(ParseError::Unbound(v)),
        None => Ok(f),
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError::Syntax {
            offset: self.pos,
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == ';' {
                self.pos = self.text[self.pos..]
                    .find('\n')
                    .map_or(self.text.len(), |i| self.pos + i);
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_space();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<&str, ParseError> {
        self.skip_space();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' || (c == '=' && self.pos == start) {
                self.pos += 1;
                if c == '=' {
                    break;
                }
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let w = self.word()?.to_string();
        let first = w.chars().next().unwrap();
        if !(first.is_ascii_alphabetic() || first == '_') {
            self.pos = start;
            self.skip_space();
            return Err(self.error(format!("bad variable name {w:?}")));
        }
        if is_keyword(&w) {
            self.pos = start;
            self.skip_space();
            return Err(self.error(format!("keyword {w:?} used as a variable")));
        }
        Ok(w)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.expect('(')?;
        self.skip_space();
        let head_pos = self.pos;
        let head = self.word()?.to_string();
        let f = match head.as_str() {
            "=" | "adj" => {
                let a = self.variable()?;
                let b = self.variable()?;
                if head == "=" {
                    Formula::Eq(a, b)
                } else {
                    Formula::Adj(a, b)
                }
            }
            "not" => Formula::Not(Box::new(self.formula()?)),
            "and" | "or" => {
                let mut parts = Vec::new();
                loop {
                    self.skip_space();
                    match self.peek() {
                        Some('(') => parts.push(self.formula()?),
                        _ => break,
                    }
                }
                if head == "and" {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                }
            }
            "implies" => {
                let a = self.formula()?;
                let b = self.formula()?;
                Formula::Implies(Box::new(a), Box::new(b))
            }
            "exists" | "forall" => {
                let v = self.variable()?;
                let body = Box::new(self.formula()?);
                if head == "exists" {
                    Formula::Exists(v, body)
                } else {
                    Formula::Forall(v, body)
                }
            }
            _ => {
                self.pos = head_pos;
                return Err(self.error(format!("unknown operator {head:?}")));
            }
        };
        self.expect(')')?;
        Ok(f)
    }
}

fn is_keyword(w: &str) -> bool {
    matches!(w, "adj" | "not" | "and" | "or" | "implies" | "exists" | "forall")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_examples() {
        let f = parse_sentence("(exists x (exists y (adj x y)))").unwrap();
        assert_eq!(f.quantifier_depth(), 2);
        let t = parse_sentence("(forall x (= x x))").unwrap();
        assert_eq!(t, Formula::forall("x", Formula::eq("x", "x")));
        let open = parse_formula("(adj x y)").unwrap();
        assert_eq!(open.free_variables().len(), 2);
        assert_eq!(parse_sentence("(adj x y)"), Err(ParseError::Unbound("x".into())));
    }

    #[test]
    fn error_positions() {
        match parse_formula("(exists x\n  (frob x))") {
            Err(ParseError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("(adj x)").is_err());
        assert!(parse_formula("(adj x y) extra").is_err());
        assert!(parse_formula("(exists and (= and and))").is_err());
        assert!(parse_formula("(= 1x y)").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn comments_and_primes() {
        let f = parse_formula("; leading\n(exists y' ; trailing\n (adj y' x_1))").unwrap();
        assert_eq!(f.to_string(), "(exists y' (adj y' x_1))");
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let var = prop::sample::select(vec!["x", "y", "z", "u_1", "y'"]).prop_map(String::from);
        let leaf = prop_oneof![
            (var.clone(), var.clone()).prop_map(|(a, b)| Formula::Eq(a, b)),
            (var.clone(), var.clone()).prop_map(|(a, b)| Formula::Adj(a, b)),
        ];
        leaf.prop_recursive(4, 32, 4, move |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::And),
                prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::Or),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (var.clone(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
                (var.clone(), inner).prop_map(|(v, f)| Formula::forall(v, f)),
            ]
        })
    }

    proptest! {
        #[test]
        fn pretty_print_roundtrips(f in arb_formula()) {
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text).unwrap(), f);
        }
    }
}
