//! Ground terms over generators `⌊m⌋`, written `[m]` in text.
//!
//! Syntax: `1`, `[k]`, juxtaposition for products, postfix `*`, `+` and
//! `'` (inverse), parentheses. Example: `[1]([2][1])*`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::RestrictionOps;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Unary {
    Star,
    Plus,
    Inv,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Term {
    One,
    Gen(usize),
    Mul(Box<Term>, Box<Term>),
    Un(Unary, Box<Term>),
}

impl Term {
    pub fn gen(k: usize) -> Term {
        Term::Gen(k)
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn star(self) -> Term {
        Term::Un(Unary::Star, Box::new(self))
    }

    pub fn plus(self) -> Term {
        Term::Un(Unary::Plus, Box::new(self))
    }

    pub fn inv(self) -> Term {
        Term::Un(Unary::Inv, Box::new(self))
    }

    /// Left-nested product of the factors; `1` when empty.
    pub fn product(factors: impl IntoIterator<Item = Term>) -> Term {
        factors
            .into_iter()
            .reduce(Term::mul)
            .unwrap_or(Term::One)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::One | Term::Gen(_) => 0,
            Term::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Term::Un(_, a) => 1 + a.depth(),
        }
    }

    pub fn generators(&self, out: &mut Vec<usize>) {
        match self {
            Term::One => {}
            Term::Gen(k) => out.push(*k),
            Term::Mul(a, b) => {
                a.generators(out);
                b.generators(out);
            }
            Term::Un(_, a) => a.generators(out),
        }
    }

    /// Syntactically a projection: `1`, `t*`, `t⁺`, or a product of those.
    pub fn is_projection_term(&self) -> bool {
        match self {
            Term::One => true,
            Term::Gen(_) => false,
            Term::Mul(a, b) => a.is_projection_term() && b.is_projection_term(),
            Term::Un(u, _) => *u != Unary::Inv,
        }
    }

    /// Rewrites `t*` as `t⁻¹t` and `t⁺` as `tt⁻¹`.
    pub fn to_inverse_signature(&self) -> Term {
        match self {
            Term::One | Term::Gen(_) => self.clone(),
            Term::Mul(a, b) => Term::mul(a.to_inverse_signature(), b.to_inverse_signature()),
            Term::Un(Unary::Inv, a) => a.to_inverse_signature().inv(),
            Term::Un(Unary::Star, a) => {
                let a = a.to_inverse_signature();
                Term::mul(a.clone().inv(), a)
            }
            Term::Un(Unary::Plus, a) => {
                let a = a.to_inverse_signature();
                Term::mul(a.clone(), a.inv())
            }
        }
    }

    /// Evaluates the term with `[k]` interpreted as `gen(k)`.
    pub fn eval<O: RestrictionOps>(
        &self,
        ops: &O,
        gen: &dyn Fn(usize) -> Result<O::Elem>,
    ) -> Result<O::Elem> {
        Ok(match self {
            Term::One => ops.one(),
            Term::Gen(k) => gen(*k)?,
            Term::Mul(a, b) => ops.mul(&a.eval(ops, gen)?, &b.eval(ops, gen)?),
            Term::Un(Unary::Star, a) => ops.star(&a.eval(ops, gen)?),
            Term::Un(Unary::Plus, a) => ops.plus(&a.eval(ops, gen)?),
            Term::Un(Unary::Inv, a) => ops
                .inv(&a.eval(ops, gen)?)
                .ok_or_else(|| Error::invalid("inverse used in a non-inverse algebra"))?,
        })
    }

    pub fn parse(text: &str) -> Result<Term> {
        let mut p = Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let t = p.product()?;
        if p.pos != p.chars.len() {
            return Err(Error::input(format!(
                "unexpected '{}' at position {} in term",
                p.chars[p.pos], p.pos
            )));
        }
        Ok(t)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Term> {
        let mut factors = Vec::new();
        while matches!(self.peek(), Some('1' | '[' | '(')) {
            factors.push(self.postfix()?);
        }
        if factors.is_empty() {
            return Err(Error::input(match self.peek() {
                Some(c) => format!("expected a term, found '{c}'"),
                None => "expected a term, found end of input".to_string(),
            }));
        }
        Ok(Term::product(factors))
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            t = match self.peek() {
                Some('*') => t.star(),
                Some('+') => t.plus(),
                Some('\'') => t.inv(),
                _ => return Ok(t),
            };
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some('[') => {
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                if self.peek() != Some(']') || digits.is_empty() {
                    return Err(Error::input("generator must look like [k]"));
                }
                self.pos += 1;
                Ok(Term::Gen(digits.parse().map_err(|_| Error::input("bad generator index"))?))
            }
            Some('(') => {
                self.pos += 1;
                let t = self.product()?;
                if self.peek() != Some(')') {
                    return Err(Error::input("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(t)
            }
            _ => Err(Error::input("expected '1', '[k]' or '('")),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::One => write!(f, "1"),
            Term::Gen(k) => write!(f, "[{k}]"),
            Term::Mul(a, b) => {
                write!(f, "{a}")?;
                match **b {
                    Term::Mul(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            Term::Un(u, a) => {
                let op = match u {
                    Unary::Star => '*',
                    Unary::Plus => '+',
                    Unary::Inv => '\'',
                };
                match **a {
                    Term::Mul(..) => write!(f, "({a}){op}"),
                    _ => write!(f, "{a}{op}"),
                }
            }
        }
    }
}

impl TryFrom<String> for Term {
    type Error = Error;

    fn try_from(s: String) -> Result<Term> {
        Term::parse(&s)
    }
}

impl From<Term> for String {
    fn from(t: Term) -> String {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints() {
        let t = Term::parse("[1]([2][1])*").unwrap();
        assert_eq!(
            t,
            Term::mul(Term::gen(1), Term::mul(Term::gen(2), Term::gen(1)).star())
        );
        assert_eq!(t.to_string(), "[1]([2][1])*");
        assert!(Term::parse("[1](").is_err());
        assert!(Term::parse("a").is_err());
        assert!(Term::parse("").is_err());
    }

    #[test]
    fn projection_terms() {
        assert!(Term::parse("[1]*[2]+").unwrap().is_projection_term());
        assert!(Term::parse("1").unwrap().is_projection_term());
        assert!(!Term::parse("[1]*[2]").unwrap().is_projection_term());
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![Just(Term::One), (0usize..4).prop_map(Term::Gen)];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
                inner.clone().prop_map(Term::star),
                inner.clone().prop_map(Term::plus),
                inner.prop_map(Term::inv),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(t in arb_term()) {
            // products re-associate on parsing, so compare printed forms
            let printed = t.to_string();
            let back = Term::parse(&printed).unwrap();
            prop_assert_eq!(back.to_string(), printed);
        }
    }
}
