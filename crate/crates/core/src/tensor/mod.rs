//! Tensor algebras `T(V)` and `T(V^{⊗k})` on concrete free modules, and the
//! realisation `θ_n` of algebra elements as linear maps `C(V)^{⊗n} -> T(V^{⊗k})`.

mod input;
pub mod lie;
pub mod rigidity;
mod theta;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;
use crate::ring::RingSpec;

pub use input::{basis_inputs, parse_input, split_input, CTensorInput, Slot};
pub use lie::{check_lie_equals_gamma_cap_primitives, gamma_submodule, lie_submodule, primitives_basis, LieCheck};
pub use theta::{
    convolution, counit_map, generator_map, is_coalgebra_map, theta_eval, theta_eval_basis, verify_theta_injectivity,
    verify_theta_injectivity_block, CoalgebraCheck, LinearMapMatrix,
};

/// Largest basis size accepted for `V`.
pub const MAX_DIM: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension must be in 1..={MAX_DIM}, got {0}")]
    BadDimension(usize),
    #[error("letter width must be positive")]
    BadWidth,
    #[error("{0}")]
    Shape(String),
    #[error("word of length {len} exceeds the codomain truncation {cap}")]
    TruncationTooSmall { len: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A free module `R^m` with basis `e_1, ..., e_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub ring: RingSpec,
    pub dim: usize,
}

impl FreeModule {
    pub fn new(ring: RingSpec, dim: usize) -> Result<Self, TensorError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(TensorError::BadDimension(dim));
        }
        Ok(FreeModule { ring, dim })
    }
}

/// A basis word of `T(V^{⊗k})`: `len / k` letters, each a `k`-tuple of basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// All words with exactly `letters` letters of width `k` over `1..=dim`, lexicographic.
pub fn words(dim: usize, k: usize, letters: usize) -> Vec<Word> {
    let len = k * letters;
    let total = dim.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut w = vec![0u8; len];
            for slot in w.iter_mut().rev() {
                *slot = (code % dim) as u8 + 1;
                code /= dim;
            }
            Word(w)
        })
        .collect()
}

/// An element of `T(V^{⊗k})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    module: FreeModule,
    width: usize,
    terms: BTreeMap<Word, BigInt>,
}

impl TensorElement {
    pub fn zero(module: FreeModule, width: usize) -> Self {
        TensorElement {
            module,
            width,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(module: FreeModule, width: usize) -> Self {
        let mut e = Self::zero(module, width);
        e.add_term(Word::empty(), BigInt::one());
        e
    }

    pub fn from_terms<I>(module: FreeModule, width: usize, terms: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = (Vec<u8>, BigInt)>,
    {
        if width == 0 {
            return Err(TensorError::BadWidth);
        }
        let mut e = Self::zero(module, width);
        for (w, c) in terms {
            if w.len() % width != 0 || w.iter().any(|&i| i == 0 || i as usize > module.dim) {
                return Err(TensorError::Shape(format!(
                    "bad word {w:?} for dim {} and width {width}",
                    module.dim
                )));
            }
            e.add_term(Word(w), c);
        }
        Ok(e)
    }

    pub fn module(&self) -> FreeModule {
        self.module
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> BigInt {
        self.coefficient(&Word::empty())
    }

    /// Largest number of letters in a word with nonzero coefficient.
    pub fn max_letters(&self) -> usize {
        self.terms.keys().map(|w| w.0.len() / self.width).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let ring = self.module.ring;
        let entry = self.terms.entry(w.clone()).or_default();
        *entry = ring.reduce(std::mem::take(entry) + c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.module, self.width);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Concatenation product of `T(V^{⊗k})`.
    pub fn mul(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.module, self.width);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<(), TensorError> {
        if self.module != other.module || self.width != other.width {
            return Err(TensorError::Shape("tensor elements live in different algebras".into()));
        }
        Ok(())
    }
}

/// Coefficients of an element of `T(W) ⊗ T(W)` on pairs of basis words.
pub type TensorPairs = BTreeMap<(Word, Word), BigInt>;

pub(crate) fn add_pair(map: &mut TensorPairs, ring: RingSpec, key: (Word, Word), c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key.clone()).or_default();
    *entry = ring.reduce(std::mem::take(entry) + c);
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Splits a word into the letters at positions in `mask` and the rest, both in order.
pub(crate) fn split_word(w: &Word, width: usize, mask: u64) -> (Word, Word) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (p, letter) in w.0.chunks(width).enumerate() {
        if mask & (1 << p) != 0 {
            left.extend_from_slice(letter);
        } else {
            right.extend_from_slice(letter);
        }
    }
    (Word(left), Word(right))
}

/// The shuffle coproduct of `T(V^{⊗k})` with primitive letters:
/// `ψ(a_1 ... a_q) = Σ a_I ⊗ a_J` over all ways to split the positions.
pub fn tensor_comult(x: &TensorElement) -> TensorPairs {
    let ring = x.module.ring;
    let mut out = TensorPairs::new();
    for (w, c) in &x.terms {
        let q = w.0.len() / x.width;
        for mask in 0u64..(1u64 << q) {
            let key = split_word(w, x.width, mask);
            add_pair(&mut out, ring, key, c.clone());
        }
    }
    out
}

pub(crate) fn write_word(f: &mut impl fmt::Write, w: &Word, width: usize) -> fmt::Result {
    for (p, letter) in w.0.chunks(width).enumerate() {
        if p > 0 {
            f.write_char('.')?;
        }
        if width == 1 {
            write!(f, "e{}", letter[0])?;
        } else {
            f.write_char('(')?;
            for (i, ix) in letter.iter().enumerate() {
                if i > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{ix}")?;
            }
            f.write_char(')')?;
        }
    }
    Ok(())
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if w.0.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_word(f, w, self.width)?;
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
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
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

    fn err(&self, msg: impl Into<String>) -> TensorError {
        TensorError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), TensorError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<BigInt, TensorError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .expect("digits")
            .parse()
            .expect("digits"))
    }

    fn index(&mut self, dim: usize) -> Result<u8, TensorError> {
        let at = self.pos;
        let v = self.number()?;
        u8::try_from(&v)
            .ok()
            .filter(|&i| i >= 1 && i as usize <= dim)
            .ok_or(TensorError::Parse {
                pos: at,
                msg: format!("basis index {v} out of range 1..={dim}"),
            })
    }

    fn letter(&mut self, dim: usize, width: usize, out: &mut Vec<u8>) -> Result<(), TensorError> {
        if width == 1 {
            self.expect(b'e')?;
            out.push(self.index(dim)?);
            return Ok(());
        }
        self.expect(b'(')?;
        for i in 0..width {
            if i > 0 {
                self.expect(b',')?;
            }
            out.push(self.index(dim)?);
        }
        self.expect(b')')
    }

    fn word(&mut self, dim: usize, width: usize) -> Result<Vec<u8>, TensorError> {
        let mut w = Vec::new();
        self.letter(dim, width, &mut w)?;
        while self.eat(b'.') {
            self.letter(dim, width, &mut w)?;
        }
        Ok(w)
    }
}

/// Parses `1 + 2*e1.e2 - e2.e1` (width 1) or `(1,2).(2,1)` (width 2).
pub fn parse_tensor(module: FreeModule, width: usize, s: &str) -> Result<TensorElement, TensorError> {
    let mut cur = Cursor {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = if cur.eat(b'-') { -1 } else { 1 };
    loop {
        let (w, c) = match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = cur.number()?;
                if cur.eat(b'*') {
                    (cur.word(module.dim, width)?, c)
                } else {
                    (Vec::new(), c)
                }
            }
            Some(b'e' | b'(') => (cur.word(module.dim, width)?, BigInt::one()),
            _ => return Err(cur.err("expected a term")),
        };
        terms.push((w, c * sign));
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
    TensorElement::from_terms(module, width, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(dim: usize) -> FreeModule {
        FreeModule::new(RingSpec::Z, dim).unwrap()
    }

    fn t(dim: usize, s: &str) -> TensorElement {
        parse_tensor(v(dim), 1, s).unwrap()
    }

    fn pair(a: &[u8], b: &[u8]) -> (Word, Word) {
        (Word(a.to_vec()), Word(b.to_vec()))
    }

    #[test]
    fn comult_examples() {
        let one = tensor_comult(&t(2, "1"));
        assert_eq!(one, [(pair(&[], &[]), BigInt::one())].into_iter().collect());
        let prim = tensor_comult(&t(2, "e1"));
        assert_eq!(prim.len(), 2);
        assert!(prim.contains_key(&pair(&[1], &[])) && prim.contains_key(&pair(&[], &[1])));
        let two = tensor_comult(&t(2, "e1.e2"));
        let want: TensorPairs = [
            pair(&[1, 2], &[]),
            pair(&[1], &[2]),
            pair(&[2], &[1]),
            pair(&[], &[1, 2]),
        ]
        .into_iter()
        .map(|k| (k, BigInt::one()))
        .collect();
        assert_eq!(two, want);
        let sq = tensor_comult(&t(1, "e1.e1"));
        assert_eq!(sq[&pair(&[1], &[1])], BigInt::from(2));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1 - 3*e2 + e1.e2", "-e1", "2 + (1,2).(2,1)"] {
            let width = if s.contains('(') { 2 } else { 1 };
            assert_eq!(parse_tensor(v(2), width, s).unwrap().to_string(), s);
        }
        assert!(parse_tensor(v(2), 1, "e3").is_err());
        assert!(parse_tensor(v(2), 2, "(1)").is_err());
    }

    #[test]
    fn words_enumeration() {
        assert_eq!(words(2, 1, 2).len(), 4);
        assert_eq!(words(3, 2, 1).len(), 9);
        assert_eq!(words(2, 1, 0), vec![Word::empty()]);
        assert_eq!(words(2, 1, 2)[1], Word(vec![1, 2]));
    }

    fn coassoc_lhs(w: &Word) -> BTreeMap<(Word, Word, Word), BigInt> {
        let mut out = BTreeMap::new();
        let x = TensorElement::from_terms(v(3), 1, [(w.0.clone(), BigInt::one())]).unwrap();
        for ((a, b), c) in tensor_comult(&x) {
            let xa = TensorElement::from_terms(v(3), 1, [(a.0, BigInt::one())]).unwrap();
            for ((a1, a2), c2) in tensor_comult(&xa) {
                *out.entry((a1, a2, b.clone())).or_insert_with(BigInt::zero) += &c * c2;
            }
        }
        out
    }

    fn coassoc_rhs(w: &Word) -> BTreeMap<(Word, Word, Word), BigInt> {
        let mut out = BTreeMap::new();
        let x = TensorElement::from_terms(v(3), 1, [(w.0.clone(), BigInt::one())]).unwrap();
        for ((a, b), c) in tensor_comult(&x) {
            let xb = TensorElement::from_terms(v(3), 1, [(b.0, BigInt::one())]).unwrap();
            for ((b1, b2), c2) in tensor_comult(&xb) {
                *out.entry((a.clone(), b1, b2)).or_insert_with(BigInt::zero) += &c * c2;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn coassociative(w in proptest::collection::vec(1u8..=3, 0..=4)) {
            let w = Word(w);
            prop_assert_eq!(coassoc_lhs(&w), coassoc_rhs(&w));
        }

        #[test]
        fn counital(w in proptest::collection::vec(1u8..=3, 0..=5)) {
            let x = TensorElement::from_terms(v(3), 1, [(w.clone(), BigInt::one())]).unwrap();
            let psi = tensor_comult(&x);
            let left: Vec<_> = psi.iter().filter(|((a, _), _)| a.0.is_empty()).collect();
            let right: Vec<_> = psi.iter().filter(|((_, b), _)| b.0.is_empty()).collect();
            prop_assert_eq!(left.len(), 1);
            prop_assert_eq!(right.len(), 1);
            prop_assert_eq!(&(left[0].0).1.0, &w);
            prop_assert_eq!(&(right[0].0).0.0, &w);
        }

        #[test]
        fn comult_is_multiplicative(a in proptest::collection::vec(1u8..=2, 0..=3), b in proptest::collection::vec(1u8..=2, 0..=3)) {
            let ea = TensorElement::from_terms(v(2), 1, [(a, BigInt::one())]).unwrap();
            let eb = TensorElement::from_terms(v(2), 1, [(b, BigInt::one())]).unwrap();
            let lhs = tensor_comult(&ea.mul(&eb).unwrap());
            let mut rhs = TensorPairs::new();
            for ((a1, a2), c) in tensor_comult(&ea) {
                for ((b1, b2), d) in tensor_comult(&eb) {
                    add_pair(&mut rhs, RingSpec::Z, (a1.concat(&b1), a2.concat(&b2)), &c * d);
                }
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
