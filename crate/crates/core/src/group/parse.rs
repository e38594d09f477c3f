//! Word grammar:
//!
//! ```text
//! word := term (sp term)*
//! term := gen | gen "^" int | "(" cycle ")" | "e"
//! gen  := [a-z] except e
//! int  := "-"? [0-9]+
//! ```
//!
//! Cycles (permutation backends only) list 1-based points separated by
//! spaces or commas. A word evaluates to the left-to-right product of its
//! terms.

use std::fmt;

use super::element::{generator_index, Exponents, Letter, Perm, Word};
use super::{GroupElement, GroupSpec};

/// A syntax or vocabulary error at a 0-based character offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|&(p, _)| p).unwrap_or(self.text.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn skip_space(&mut self) -> bool {
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.at += 1;
        }
        self.at > start
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.at += 1;
        }
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.at += 1;
        }
        if s.is_empty() || s == "-" {
            return err(start, "malformed exponent");
        }
        s.parse::<i64>().or_else(|_| err(start, "exponent out of range"))
    }
}

enum Term {
    Gen(usize, i64),
    Cycle(Vec<usize>),
    Identity,
}

pub(crate) fn parse_word(spec: &GroupSpec, text: &str) -> Result<GroupElement, ParseError> {
    let mut cur = Cursor { chars: text.char_indices().collect(), at: 0, text };
    let mut terms: Vec<(usize, Term)> = Vec::new();
    cur.skip_space();
    if cur.peek().is_none() {
        return err(0, "empty word");
    }
    while cur.peek().is_some() {
        let start = cur.pos();
        let c = cur.bump().expect("peeked");
        let term = match c {
            '(' => Term::Cycle(parse_cycle(&mut cur, start)?),
            'e' => Term::Identity,
            c if c.is_ascii_lowercase() => {
                let gen = generator_index(c).expect("lowercase non-e letter");
                if gen >= spec.generator_count() {
                    return err(start, format!("unknown generator '{c}'"));
                }
                let exp = if cur.peek() == Some('^') {
                    cur.bump();
                    cur.int()?
                } else {
                    1
                };
                Term::Gen(gen, exp)
            }
            other => return err(start, format!("unexpected character '{other}'")),
        };
        terms.push((start, term));
        cur.skip_space();
    }
    evaluate(spec, terms)
}

fn parse_cycle(cur: &mut Cursor<'_>, open: usize) -> Result<Vec<usize>, ParseError> {
    let mut points = Vec::new();
    loop {
        cur.skip_space();
        match cur.peek() {
            Some(')') => {
                cur.bump();
                return Ok(points);
            }
            Some(',') if !points.is_empty() => {
                cur.bump();
                cur.skip_space();
                if !matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
                    return err(cur.pos(), "expected point after ','");
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = cur.pos();
                let p = cur.int()?;
                if p < 1 {
                    return err(start, "cycle points are 1-based");
                }
                points.push(p as usize - 1);
                if !matches!(cur.peek(), Some(c) if c.is_whitespace() || c == ',' || c == ')') {
                    return err(cur.pos(), "expected separator in cycle");
                }
            }
            Some(c) => return err(cur.pos(), format!("unexpected character '{c}' in cycle")),
            None => return err(open, "unclosed cycle"),
        }
    }
}

fn evaluate(spec: &GroupSpec, terms: Vec<(usize, Term)>) -> Result<GroupElement, ParseError> {
    let mut acc = spec.identity();
    for (pos, term) in terms {
        let value = match (spec, term) {
            (_, Term::Identity) => continue,
            (GroupSpec::Free { .. }, Term::Gen(gen, exp)) => {
                let letter = Letter::new(gen, exp < 0);
                GroupElement::Free(Word::from_letters(std::iter::repeat_n(letter, exp.unsigned_abs() as usize)))
            }
            (GroupSpec::Abelian { rank }, Term::Gen(gen, exp)) => {
                let mut v = vec![0; *rank];
                v[gen] = exp;
                GroupElement::Abelian(Exponents::new(v))
            }
            (GroupSpec::Perm { generators, .. }, Term::Gen(gen, exp)) => {
                let base = if exp < 0 { generators[gen].inverse() } else { generators[gen].clone() };
                let mut p = Perm::identity(base.degree());
                for _ in 0..exp.unsigned_abs() {
                    p = p.compose(&base);
                }
                GroupElement::Perm(p)
            }
            (GroupSpec::Perm { degree, .. }, Term::Cycle(points)) => match Perm::cycle(*degree, &points) {
                Ok(p) => GroupElement::Perm(p),
                Err(e) => return err(pos, e.to_string()),
            },
            (_, Term::Cycle(_)) => return err(pos, "cycle notation requires a permutation group"),
        };
        acc = &acc * &value;
    }
    Ok(acc)
}

/// Splits a comma-separated word list, ignoring commas inside cycles.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}
