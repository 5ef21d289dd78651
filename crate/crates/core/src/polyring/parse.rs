//! Polynomial expressions: `+ - * / ^`, parentheses, integer literals and
//! implicit multiplication (`x^2y^2`, `3xz^3`). Division is only allowed by
//! nonzero constants, which is how rational coefficients such as `32/3` are
//! written.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str, ring: &Ring) -> Result<Vec<(Tok, usize)>> {
    let spellings = ring.spellings();
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                split_identifier(&text[start..i], start, &spellings, &mut out)?;
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

/// Splits a run like `xyz` or `x1x2` into variables by greedy longest match.
fn split_identifier(
    word: &str,
    offset: usize,
    spellings: &[(&str, usize)],
    out: &mut Vec<(Tok, usize)>,
) -> Result<()> {
    let mut rest = word;
    let mut pos = offset;
    while !rest.is_empty() {
        let best = spellings
            .iter()
            .filter(|(s, _)| rest.starts_with(s))
            .max_by_key(|(s, _)| s.len());
        match best {
            Some((s, j)) => {
                out.push((Tok::Var(*j), pos));
                rest = &rest[s.len()..];
                pos += s.len();
            }
            None => {
                return Err(Error::UnknownVariable { name: word.to_string(), pos: offset });
            }
        }
    }
    Ok(())
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let divisor = self.factor()?;
                    let c = constant_value(&divisor).ok_or_else(|| Error::Syntax {
                        pos,
                        msg: "division is only allowed by constants".into(),
                    })?;
                    if c.is_zero() {
                        return Err(Error::Syntax { pos, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / c));
                }
                // implicit multiplication before a variable or a parenthesis
                Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Minus) => Err(Error::NegativeExponent { pos }),
            Some(Tok::Num(n)) => {
                self.at += 1;
                let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            _ => self.err("expected an exponent after `^`"),
        }
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::Var(j)) => {
                self.at += 1;
                Polynomial::var(self.ring, j)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<Rational> {
    match p.degree() {
        None => Some(Rational::zero()),
        Some(0) => p.terms().next().map(|(_, c)| c.clone()),
        Some(_) => None,
    }
}

/// Parses polynomial text over the given ring.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let toks = lex(text, ring)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut parser = Parser { ring, toks, at: 0, end: text.len() };
    let p = parser.expr()?;
    if parser.at < parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

/// Builds a ring from the variables occurring in `texts`. A variable is a
/// letter optionally followed by digits, so `xy` names two variables and
/// `x12` one. Order: `x, y, z, t` first, then the rest alphabetically.
pub fn infer_ring(texts: &[&str]) -> Result<Ring> {
    let mut found: Vec<String> = Vec::new();
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_digit() {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            } else if bytes[i].is_ascii_alphabetic() {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let name = &text[start..i];
                if !found.iter().any(|f| f == name) {
                    found.push(name.to_string());
                }
            } else {
                i += 1;
            }
        }
    }
    if found.is_empty() {
        found.push("x".into());
    }
    let rank = |name: &str| ["x", "y", "z", "t"].iter().position(|a| *a == name);
    found.sort_by(|a, b| match (rank(a), rank(b)) {
        (Some(i), Some(j)) => i.cmp(&j),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => natural_key(a).cmp(&natural_key(b)),
    });
    Ring::new(found)
}

fn natural_key(name: &str) -> (String, u64) {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (letters, digits) = name.split_at(split);
    (letters.to_string(), digits.parse().unwrap_or(0))
}
