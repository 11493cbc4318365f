//! Text form of algebra elements, e.g. `1 + y1.y2 - 3*y2.y1` or `{1|2}.{3|4}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::element::{AlgebraElement, Shape};
use super::monomial::Monomial;
use super::AlgebraError;

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, k: usize) -> fmt::Result {
    for (b, block) in m.blocks(k).enumerate() {
        if b > 0 {
            f.write_char('.')?;
        }
        if k == 1 {
            write!(f, "y{}", block[0])?;
        } else {
            f.write_char('{')?;
            for (i, ix) in block.iter().enumerate() {
                if i > 0 {
                    f.write_char('|')?;
                }
                write!(f, "{ix}")?;
            }
            f.write_char('}')?;
        }
    }
    Ok(())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let k = self.shape().k;
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_unit() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m, k)?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
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

    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), AlgebraError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&str, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn index(&mut self, shape: &Shape) -> Result<u8, AlgebraError> {
        let at = self.pos;
        let d = self.digits()?;
        match d.parse::<usize>() {
            Ok(i) if i >= 1 && i <= shape.n => Ok(i as u8),
            _ => Err(AlgebraError::Parse {
                pos: at,
                msg: format!("generator index {d} out of range 1..={}", shape.n),
            }),
        }
    }

    fn block(&mut self, shape: &Shape, out: &mut Vec<u8>) -> Result<(), AlgebraError> {
        if shape.k == 1 {
            self.expect(b'y')?;
            out.push(self.index(shape)?);
            return Ok(());
        }
        self.expect(b'{')?;
        for i in 0..shape.k {
            if i > 0 {
                self.expect(b'|')?;
            }
            self.eat(b'y');
            out.push(self.index(shape)?);
        }
        self.expect(b'}')
    }

    fn monomial(&mut self, shape: &Shape) -> Result<Vec<u8>, AlgebraError> {
        let mut ix = Vec::new();
        self.block(shape, &mut ix)?;
        while self.eat(b'.') {
            self.block(shape, &mut ix)?;
        }
        Ok(ix)
    }

    fn term(&mut self, shape: &Shape) -> Result<(Vec<u8>, BigInt), AlgebraError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c: BigInt = self.digits()?.parse().expect("digits");
                if self.eat(b'*') {
                    Ok((self.monomial(shape)?, c))
                } else {
                    Ok((Vec::new(), c))
                }
            }
            Some(b'y') | Some(b'{') => Ok((self.monomial(shape)?, BigInt::one())),
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parses the text form for the given shape. Repeated monomials are summed
/// and inadmissible ones vanish.
pub fn parse_element(shape: Shape, s: &str) -> Result<AlgebraElement, AlgebraError> {
    let mut cur = Cursor {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = if cur.eat(b'-') { -1 } else { 1 };
    loop {
        let (m, c) = cur.term(&shape)?;
        terms.push((m, c * sign));
        if cur.eat(b'+') {
            sign = 1;
        } else if cur.eat(b'-') {
            sign = -1;
        } else {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    let terms = terms.into_iter().filter(|(_, c): &(Vec<u8>, BigInt)| !c.is_zero());
    AlgebraElement::from_terms(shape, terms)
}
