//! Group words as entered: letters, products, iterated commutators and
//! parenthesised powers. Printing reproduces the canonical input form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::GroupError;
use crate::algebra::{IndexMap, Shape};

/// How a block letter was written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterStyle {
    /// `x3` (block size 1 only).
    Plain,
    /// `{x1|x2}`.
    BracedNamed,
    /// `{1|2}`.
    BracedBare,
}

/// `x_I^r`: a generator (or block generator) raised to a ring exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub indices: Vec<u8>,
    /// Exponent as written; `None` means `^1` was omitted.
    pub exponent: Option<BigInt>,
    pub style: LetterStyle,
}

impl Letter {
    pub fn new(indices: Vec<u8>, exponent: impl Into<BigInt>) -> Letter {
        let style = if indices.len() == 1 {
            LetterStyle::Plain
        } else {
            LetterStyle::BracedNamed
        };
        let e = exponent.into();
        Letter {
            indices,
            exponent: (!e.is_one()).then_some(e),
            style,
        }
    }

    pub fn exponent_value(&self) -> BigInt {
        self.exponent.clone().unwrap_or_else(BigInt::one)
    }

    pub fn has_repeat(&self) -> bool {
        let mut seen = 0u64;
        self.indices.iter().any(|&i| {
            let bit = 1u64 << (i - 1);
            let dup = seen & bit != 0;
            seen |= bit;
            dup
        })
    }

    fn inverse(&self) -> Letter {
        let e = -self.exponent_value();
        Letter {
            exponent: Some(e),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordExpr {
    Identity,
    Letter(Letter),
    /// Juxtaposition of at least two factors.
    Product(Vec<WordExpr>),
    /// Left-normed `[w_1, ..., w_t]`, `t >= 2`.
    Commutator(Vec<WordExpr>),
    /// `( w )` with an optional integer power.
    Paren(Box<WordExpr>, Option<BigInt>),
}

impl WordExpr {
    pub fn letter(indices: Vec<u8>, exponent: impl Into<BigInt>) -> WordExpr {
        WordExpr::Letter(Letter::new(indices, exponent))
    }

    pub fn product(parts: Vec<WordExpr>) -> WordExpr {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                WordExpr::Identity => {}
                WordExpr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => WordExpr::Identity,
            1 => flat.pop().expect("one factor"),
            _ => WordExpr::Product(flat),
        }
    }

    pub fn commutator(parts: Vec<WordExpr>) -> WordExpr {
        if parts.contains(&WordExpr::Identity) {
            return WordExpr::Identity;
        }
        WordExpr::Commutator(parts)
    }

    /// Structural inverse: reversed products, negated exponents and
    /// `[[c], d]^{-1} = [d, [c]]`.
    pub fn inverse(&self) -> WordExpr {
        match self {
            WordExpr::Identity => WordExpr::Identity,
            WordExpr::Letter(l) => WordExpr::Letter(l.inverse()),
            WordExpr::Product(ps) => WordExpr::Product(ps.iter().rev().map(WordExpr::inverse).collect()),
            WordExpr::Commutator(ps) => {
                let (last, init) = ps.split_last().expect("commutators have two entries");
                let head = if init.len() == 1 {
                    init[0].clone()
                } else {
                    WordExpr::Commutator(init.to_vec())
                };
                WordExpr::Commutator(vec![last.clone(), head])
            }
            WordExpr::Paren(w, e) => {
                let e = e.clone().unwrap_or_else(BigInt::one);
                WordExpr::Paren(w.clone(), Some(-e))
            }
        }
    }

    /// Letter-wise substitution; letters touching a killed generator become the identity.
    pub fn substitute(&self, map: &IndexMap) -> WordExpr {
        match self {
            WordExpr::Identity => WordExpr::Identity,
            WordExpr::Letter(l) => match map.apply_all(&l.indices) {
                Some(indices) => WordExpr::Letter(Letter { indices, ..l.clone() }),
                None => WordExpr::Identity,
            },
            WordExpr::Product(ps) => WordExpr::product(ps.iter().map(|p| p.substitute(map)).collect()),
            WordExpr::Commutator(ps) => WordExpr::commutator(ps.iter().map(|p| p.substitute(map)).collect()),
            WordExpr::Paren(w, e) => match w.substitute(map) {
                WordExpr::Identity => WordExpr::Identity,
                inner => WordExpr::Paren(Box::new(inner), e.clone()),
            },
        }
    }

    pub fn letters(&self) -> Vec<&Letter> {
        fn go<'a>(w: &'a WordExpr, out: &mut Vec<&'a Letter>) {
            match w {
                WordExpr::Identity => {}
                WordExpr::Letter(l) => out.push(l),
                WordExpr::Product(ps) | WordExpr::Commutator(ps) => ps.iter().for_each(|p| go(p, out)),
                WordExpr::Paren(inner, _) => go(inner, out),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Checks block lengths and index ranges against a shape.
    pub fn validate(&self, shape: &Shape) -> Result<(), GroupError> {
        for l in self.letters() {
            if l.indices.len() != shape.k {
                return Err(GroupError::BlockLength {
                    expected: shape.k,
                    got: l.indices.len(),
                });
            }
            if let Some(&i) = l.indices.iter().find(|&&i| i == 0 || i as usize > shape.n) {
                return Err(GroupError::IndexOutOfRange {
                    index: i as usize,
                    n: shape.n,
                });
            }
        }
        Ok(())
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Option<BigInt>) -> fmt::Result {
    match e {
        Some(e) => write!(f, "^{e}"),
        None => Ok(()),
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.style {
            LetterStyle::Plain => write!(f, "x{}", self.indices[0])?,
            LetterStyle::BracedNamed | LetterStyle::BracedBare => {
                f.write_str("{")?;
                for (i, ix) in self.indices.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    if self.style == LetterStyle::BracedNamed {
                        write!(f, "x{ix}")?;
                    } else {
                        write!(f, "{ix}")?;
                    }
                }
                f.write_str("}")?;
            }
        }
        write_exponent(f, &self.exponent)
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Identity => f.write_str("1"),
            WordExpr::Letter(l) => write!(f, "{l}"),
            WordExpr::Product(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            WordExpr::Commutator(ps) => {
                f.write_str("[")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("]")
            }
            WordExpr::Paren(w, e) => {
                write!(f, "({w})")?;
                write_exponent(f, e)
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> GroupError {
        GroupError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), GroupError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn unsigned(&mut self) -> Result<&str, GroupError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn index(&mut self) -> Result<u8, GroupError> {
        let d = self.unsigned()?.to_string();
        d.parse::<u8>()
            .ok()
            .filter(|&i| i >= 1 && i as usize <= crate::algebra::MAX_GENERATORS)
            .ok_or_else(|| self.err(format!("bad generator index {d}")))
    }

    fn exponent(&mut self) -> Result<Option<BigInt>, GroupError> {
        if !self.eat(b'^') {
            return Ok(None);
        }
        self.skip_ws();
        let neg = self.s.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let v: BigInt = self.unsigned()?.parse().expect("digits");
        Ok(Some(if neg { -v } else { v }))
    }

    fn atom(&mut self) -> Result<WordExpr, GroupError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let i = self.index()?;
                let exponent = self.exponent()?;
                Ok(WordExpr::Letter(Letter {
                    indices: vec![i],
                    exponent,
                    style: LetterStyle::Plain,
                }))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut indices = Vec::new();
                let mut named = None;
                loop {
                    let has_x = self.eat(b'x');
                    if *named.get_or_insert(has_x) != has_x {
                        return Err(self.err("mixed `x<i>` and bare indices in a block"));
                    }
                    self.skip_ws();
                    indices.push(self.index()?);
                    if !self.eat(b'|') {
                        break;
                    }
                }
                self.expect(b'}')?;
                let exponent = self.exponent()?;
                Ok(WordExpr::Letter(Letter {
                    indices,
                    exponent,
                    style: if named == Some(true) {
                        LetterStyle::BracedNamed
                    } else {
                        LetterStyle::BracedBare
                    },
                }))
            }
            Some(b'[') => {
                self.pos += 1;
                let mut parts = vec![self.product()?];
                while self.eat(b',') {
                    parts.push(self.product()?);
                }
                self.expect(b']')?;
                if parts.len() < 2 {
                    return Err(self.err("a commutator needs at least two entries"));
                }
                Ok(WordExpr::Commutator(parts))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(b')')?;
                let e = self.exponent()?;
                Ok(WordExpr::Paren(Box::new(inner), e))
            }
            Some(b'1') => {
                let save = self.pos;
                self.pos += 1;
                if self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos = save;
                    return Err(self.err("expected a letter"));
                }
                Ok(WordExpr::Identity)
            }
            _ => Err(self.err("expected `x<i>`, `{...}`, `[...]`, `(...)` or `1`")),
        }
    }

    fn product(&mut self) -> Result<WordExpr, GroupError> {
        let mut parts = vec![self.atom()?];
        while matches!(self.peek(), Some(b'x' | b'{' | b'[' | b'(' | b'1')) {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one factor")
        } else {
            WordExpr::Product(parts)
        })
    }
}

/// Parses a word; index ranges are checked separately by [`WordExpr::validate`].
pub fn parse_word(s: &str) -> Result<WordExpr, GroupError> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let w = p.product()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

impl WordExpr {
    /// Largest power magnitude, used to refuse absurd `(w)^e` inputs early.
    pub(crate) fn max_paren_power(&self) -> BigInt {
        match self {
            WordExpr::Identity | WordExpr::Letter(_) => BigInt::one(),
            WordExpr::Product(ps) | WordExpr::Commutator(ps) => ps
                .iter()
                .map(WordExpr::max_paren_power)
                .max()
                .unwrap_or_else(BigInt::one),
            WordExpr::Paren(w, e) => {
                let own = e.as_ref().map(|e| e.abs()).unwrap_or_else(BigInt::one);
                own.max(w.max_paren_power())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn round_trips() {
        for s in [
            "x1",
            "x1^2 x1^-2",
            "[x1,x2]",
            "[x1^2,x2^3,x1]",
            "{x1|x2}^4",
            "{1|2}^3 {3|4}",
            "([x1,x2] x3)^-2",
            "1",
            "[x1 x2,(x3)]",
        ] {
            assert_eq!(parse_word(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        for s in ["", "x", "x1^", "[x1]", "{x1|2}", "x1 )", "y1", "12"] {
            assert!(parse_word(s).is_err(), "{s}");
        }
    }

    #[test]
    fn substitution_drops_killed_letters() {
        let w = parse_word("x1^2 x2^3 x3^5").unwrap();
        let p2 = IndexMap::face(3, 2).unwrap();
        assert_eq!(w.substitute(&p2).to_string(), "x1^2 x2^5");
        let c = parse_word("[x1,x2] x3").unwrap();
        assert_eq!(c.substitute(&IndexMap::face(3, 1).unwrap()).to_string(), "x2");
    }

    #[test]
    fn inverse_shapes() {
        assert_eq!(parse_word("x1 x2^3").unwrap().inverse().to_string(), "x2^-3 x1^-1");
        assert_eq!(parse_word("[x1,x2,x3]").unwrap().inverse().to_string(), "[x3,[x1,x2]]");
        assert_eq!(parse_word("(x1)^2").unwrap().inverse().to_string(), "(x1)^-2");
    }

    fn word() -> impl Strategy<Value = WordExpr> {
        let leaf = (1u8..=4, -3i64..4).prop_map(|(i, e)| WordExpr::letter(vec![i], e));
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(WordExpr::Product),
                proptest::collection::vec(inner.clone(), 2..4).prop_map(WordExpr::Commutator),
                (inner, proptest::option::of(-3i64..4))
                    .prop_map(|(w, e)| WordExpr::Paren(Box::new(w), e.map(BigInt::from))),
            ]
        })
    }

    proptest! {
        #[test]
        fn printed_words_reparse(w in word()) {
            let s = w.to_string();
            let back = parse_word(&s).unwrap();
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
