//! Recursive-descent parser for propositional formulas.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! implies := or ( "->" implies )?      right-associative
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | primary
//! primary := NAME | "(" implies ")"
//! ```
//!
//! Names are runs of ASCII letters, digits, `_` and `.`. Error positions are
//! 0-based character offsets into the input.

use std::collections::BTreeMap;
use std::fmt;

use super::{Proposition, WorldSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Name { name: String, position: usize },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn parse(text: &str) -> Result<Formula> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let formula = parser.implies()?;
        match parser.peek() {
            (Token::End, _) => Ok(formula),
            (tok, at) => Err(Error::Syntax {
                position: at,
                message: format!("unexpected {}", tok.describe()),
            }),
        }
    }

    pub fn eval(
        &self,
        space: &WorldSpace,
        bindings: &BTreeMap<String, Proposition>,
    ) -> Result<Proposition> {
        match self {
            Formula::Name { name, position } => {
                let p = bindings.get(name).ok_or_else(|| Error::UnboundName {
                    name: name.clone(),
                    position: *position,
                })?;
                space.check_same(p.space())?;
                Ok(p.clone())
            }
            Formula::Not(inner) => Ok(inner.eval(space, bindings)?.not()),
            Formula::And(a, b) => a.eval(space, bindings)?.and(&b.eval(space, bindings)?),
            Formula::Or(a, b) => a.eval(space, bindings)?.or(&b.eval(space, bindings)?),
            Formula::Implies(a, b) => a.eval(space, bindings)?.implies(&b.eval(space, bindings)?),
        }
    }
}

/// Formats with explicit parentheses around every binary connective.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Name { name, .. } => write!(f, "{name}"),
            Formula::Not(inner) => write!(f, "~{inner}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

/// Parses `text` and evaluates it to the set of atoms it denotes.
pub fn parse_formula(
    text: &str,
    space: &WorldSpace,
    bindings: &BTreeMap<String, Proposition>,
) -> Result<Proposition> {
    Formula::parse(text)?.eval(space, bindings)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(String),
    And,
    Or,
    Not,
    Implies,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Name(n) => format!("name `{n}`"),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Not => "`~`".into(),
            Token::Implies => "`->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '&' => Token::And,
            '|' => Token::Or,
            '~' => Token::Not,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Implies
            }
            c if is_name_char(c) => {
                while i + 1 < chars.len() && is_name_char(chars[i + 1]) {
                    i += 1;
                }
                Token::Name(chars[start..=i].iter().collect())
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        tokens.push((tok, start));
        i += 1;
    }
    tokens.push((Token::End, chars.len()));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> (Token, usize) {
        self.tokens[self.pos].clone()
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.peek();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek().0 == Token::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek().0 == Token::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek().0 == Token::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek().0 == Token::Not {
            self.bump();
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.bump() {
            (Token::Name(name), position) => Ok(Formula::Name { name, position }),
            (Token::LParen, _) => {
                let inner = self.implies()?;
                match self.bump() {
                    (Token::RParen, _) => Ok(inner),
                    (tok, at) => Err(Error::Syntax {
                        position: at,
                        message: format!("expected `)`, found {}", tok.describe()),
                    }),
                }
            }
            (tok, at) => Err(Error::Syntax {
                position: at,
                message: format!("expected a name or `(`, found {}", tok.describe()),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setup() -> (WorldSpace, BTreeMap<String, Proposition>) {
        let s = WorldSpace::new(["a", "b", "c", "d"]).unwrap();
        let mut b = BTreeMap::new();
        b.insert("A".to_string(), s.proposition([0]).unwrap());
        b.insert("B".to_string(), s.proposition([0, 1]).unwrap());
        b.insert("C".to_string(), s.proposition([2]).unwrap());
        (s, b)
    }

    #[test]
    fn negation() {
        let s = WorldSpace::new(["a", "b"]).unwrap();
        let mut b = BTreeMap::new();
        b.insert("A".to_string(), s.atom(0).unwrap());
        assert_eq!(parse_formula("~A", &s, &b).unwrap(), s.atom(1).unwrap());
    }

    #[test]
    fn precedence() {
        assert_eq!(Formula::parse("A & B | C").unwrap().to_string(), "((A & B) | C)");
        assert_eq!(Formula::parse("A | B & C").unwrap().to_string(), "(A | (B & C))");
        assert_eq!(Formula::parse("~A & B").unwrap().to_string(), "(~A & B)");
        assert_eq!(Formula::parse("A -> B -> C").unwrap().to_string(), "(A -> (B -> C))");
        assert_eq!(Formula::parse("A | B -> C & A").unwrap().to_string(), "((A | B) -> (C & A))");
        assert_eq!(Formula::parse("(A -> B) -> C").unwrap().to_string(), "((A -> B) -> C)");
        assert_eq!(Formula::parse("~~A").unwrap().to_string(), "~~A");
    }

    #[test]
    fn evaluation_matches_sets() {
        let (s, b) = setup();
        let got = parse_formula("A & B | C", &s, &b).unwrap();
        assert_eq!(got, s.proposition([0, 2]).unwrap());
        let got = parse_formula("C -> A", &s, &b).unwrap();
        assert_eq!(got, s.proposition([0, 1, 3]).unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Formula::parse("A &") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        match Formula::parse("(A | B") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        match Formula::parse("A B") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match Formula::parse("A - B") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Formula::parse(""), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn unbound_name() {
        let (s, b) = setup();
        assert_eq!(
            parse_formula("A | Zed", &s, &b).unwrap_err(),
            Error::UnboundName { name: "Zed".into(), position: 4 }
        );
    }

    fn arb_formula() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![Just("A".to_string()), Just("B".to_string()), Just("C".to_string())];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|f| format!("~{f}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} & {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} | {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} -> {b}")),
                inner.prop_map(|f| format!("({f})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn format_then_reparse_preserves_atoms(text in arb_formula()) {
            let (s, b) = setup();
            let parsed = Formula::parse(&text).unwrap();
            let reparsed = Formula::parse(&parsed.to_string()).unwrap();
            prop_assert_eq!(parsed.eval(&s, &b).unwrap(), reparsed.eval(&s, &b).unwrap());
        }
    }
}
