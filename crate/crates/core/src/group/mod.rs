//! The Cohen groups `K_n^R` and `K_n^R(k)`, with equality decided through the
//! representation `x_I^r -> 1 + r y_I` into the units of `A_n^R[k]`.

mod hset;
mod word;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, IndexMap, Monomial, Shape, WindowConvention};
use crate::ring::RingSpec;

pub use hset::{descend, is_member_h, is_member_h_l, is_member_h_lk, lift_h, MembershipReport};
pub use word::{parse_word, Letter, LetterStyle, WordExpr};

/// Largest `|e|` accepted in `(w)^e`.
pub const MAX_WORD_POWER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("block of length {got}, expected {expected}")]
    BlockLength { expected: usize, got: usize },
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Shape, Shape),
    #[error("power {0} exceeds the supported bound")]
    PowerTooLarge(BigInt),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Warnings attached to answers whose mathematical backing is incomplete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Caveat {
    /// The representation of `K_n^R(k)`, `k >= 2`, is only known to be faithful
    /// for `R = Z` and `R = Z/p^r`.
    FaithfulnessUnproven,
    /// The window projection shifts surviving generators by one, as tabulated,
    /// instead of by the window length.
    WindowShiftVerbatim,
}

impl Caveat {
    pub fn name(&self) -> &'static str {
        match self {
            Caveat::FaithfulnessUnproven => "faithfulness-unproven",
            Caveat::WindowShiftVerbatim => "window-shift-verbatim",
        }
    }
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Caveats that apply to equality answers in groups of this shape.
pub fn shape_caveats(shape: &Shape) -> Vec<Caveat> {
    let proven = shape.k == 1 || shape.ring.is_integers() || shape.ring.prime_power().is_some();
    if proven {
        Vec::new()
    } else {
        vec![Caveat::FaithfulnessUnproven]
    }
}

/// `1 + r y_I`, or `1` when the block repeats an index.
pub fn letter_rep(shape: Shape, letter: &Letter) -> Result<AlgebraElement, GroupError> {
    let one = AlgebraElement::one(shape);
    if letter.has_repeat() {
        return Ok(one);
    }
    let m = Monomial::new(letter.indices.clone()).expect("checked for repeats");
    let y = AlgebraElement::from_monomial(shape, m, letter.exponent_value())?;
    Ok(one.add(&y)?)
}

/// Group commutator `[a, b] = a^{-1} b^{-1} a b` of units.
fn unit_commutator(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, GroupError> {
    let ai = a.unit_inverse()?;
    let bi = b.unit_inverse()?;
    Ok(ai.mul(&bi)?.mul(a)?.mul(b)?)
}

/// The representation of a word as a unit of `A_n^R[k]`.
pub fn rep(shape: Shape, w: &WordExpr) -> Result<AlgebraElement, GroupError> {
    match w {
        WordExpr::Identity => Ok(AlgebraElement::one(shape)),
        WordExpr::Letter(l) => letter_rep(shape, l),
        WordExpr::Product(ps) => ps
            .iter()
            .try_fold(AlgebraElement::one(shape), |acc, p| Ok(acc.mul(&rep(shape, p)?)?)),
        WordExpr::Commutator(ps) => {
            let (first, rest) = ps.split_first().expect("commutators have two entries");
            rest.iter()
                .try_fold(rep(shape, first)?, |acc, p| unit_commutator(&acc, &rep(shape, p)?))
        }
        WordExpr::Paren(inner, e) => {
            let base = rep(shape, inner)?;
            let e = e.clone().unwrap_or_else(BigInt::one);
            let mag = e
                .abs()
                .to_u64()
                .filter(|&m| m <= MAX_WORD_POWER)
                .ok_or_else(|| GroupError::PowerTooLarge(e.clone()))?;
            let base = if e.is_negative() { base.unit_inverse()? } else { base };
            Ok(base.pow(mag))
        }
    }
}

/// An element of `K_n^R(k)`: the word as entered plus its canonical image.
#[derive(Debug, Clone)]
pub struct GroupElement {
    shape: Shape,
    word: WordExpr,
    canon: AlgebraElement,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.canon == other.canon
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn from_word(shape: Shape, word: WordExpr) -> Result<Self, GroupError> {
        word.validate(&shape)?;
        if word.max_paren_power() > BigInt::from(MAX_WORD_POWER) {
            return Err(GroupError::PowerTooLarge(word.max_paren_power()));
        }
        let canon = rep(shape, &word)?;
        Ok(GroupElement { shape, word, canon })
    }

    pub fn parse(shape: Shape, s: &str) -> Result<Self, GroupError> {
        Self::from_word(shape, parse_word(s)?)
    }

    pub fn identity(shape: Shape) -> Self {
        GroupElement {
            shape,
            word: WordExpr::Identity,
            canon: AlgebraElement::one(shape),
        }
    }

    /// `x_i^r` (block size 1).
    pub fn generator(shape: Shape, i: usize, r: impl Into<BigInt>) -> Result<Self, GroupError> {
        Self::block_generator(shape, &[i], r)
    }

    /// `{x_{i_1}|...|x_{i_k}}^r`.
    pub fn block_generator(shape: Shape, ix: &[usize], r: impl Into<BigInt>) -> Result<Self, GroupError> {
        let indices = ix
            .iter()
            .map(|&i| u8::try_from(i).map_err(|_| GroupError::IndexOutOfRange { index: i, n: shape.n }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_word(shape, WordExpr::letter(indices, r))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn ring(&self) -> RingSpec {
        self.shape.ring
    }

    pub fn word(&self) -> &WordExpr {
        &self.word
    }

    pub fn canon(&self) -> &AlgebraElement {
        &self.canon
    }

    pub fn into_canon(self) -> AlgebraElement {
        self.canon
    }

    pub fn is_identity(&self) -> bool {
        self.canon.is_one()
    }

    pub fn caveats(&self) -> Vec<Caveat> {
        shape_caveats(&self.shape)
    }

    fn check_same(&self, other: &Self) -> Result<(), GroupError> {
        if self.shape != other.shape {
            return Err(GroupError::ShapeMismatch(self.shape, other.shape));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_same(other)?;
        Ok(GroupElement {
            shape: self.shape,
            word: WordExpr::product(vec![self.word.clone(), other.word.clone()]),
            canon: self.canon.mul(&other.canon)?,
        })
    }

    pub fn inv(&self) -> Self {
        GroupElement {
            shape: self.shape,
            word: self.word.inverse(),
            canon: self.canon.unit_inverse().expect("group elements are units"),
        }
    }

    /// `(w)^e`.
    pub fn pow(&self, e: impl Into<BigInt>) -> Result<Self, GroupError> {
        Self::from_word(self.shape, WordExpr::Paren(Box::new(self.word.clone()), Some(e.into())))
    }

    pub fn equal(&self, other: &Self) -> Result<bool, GroupError> {
        self.check_same(other)?;
        Ok(self.canon == other.canon)
    }

    /// Applies a generator map to the word and the canonical form in parallel.
    pub fn substitute(&self, map: &IndexMap) -> Result<Self, GroupError> {
        let canon = self.canon.substitute(map)?;
        Ok(GroupElement {
            shape: canon.shape(),
            word: self.word.substitute(map),
            canon,
        })
    }

    /// `p_j : K_n -> K_{n-1}`, `1 <= j <= n`.
    pub fn proj_p(&self, j: usize) -> Result<Self, GroupError> {
        let map = IndexMap::face(self.shape.n, j).ok_or(GroupError::IndexOutOfRange {
            index: j,
            n: self.shape.n,
        })?;
        self.substitute(&map)
    }

    /// `s_j : K_n -> K_{n+1}`, `1 <= j <= n+1`.
    pub fn inject_s(&self, j: usize) -> Result<Self, GroupError> {
        let map = IndexMap::coface(self.shape.n, j).ok_or(GroupError::IndexOutOfRange {
            index: j,
            n: self.shape.n + 1,
        })?;
        self.substitute(&map)
    }

    /// `p_{j+{1,...,l}}` on `l n` generators, `0 <= j <= n-1`.
    pub fn block_proj(&self, conv: WindowConvention, l: usize, j: usize) -> Result<Self, GroupError> {
        let n_total = self.shape.n;
        if l == 0 || !n_total.is_multiple_of(l) {
            return Err(GroupError::Precondition(format!(
                "window length {l} does not divide {n_total}"
            )));
        }
        let map = IndexMap::window(conv, l, n_total / l, j).ok_or(GroupError::IndexOutOfRange {
            index: j,
            n: n_total / l,
        })?;
        self.substitute(&map)
    }
}

/// Left-normed group commutator `[[g_1, g_2], ..., g_t]`, `t >= 2`.
pub fn group_commutator(gs: &[GroupElement]) -> Result<GroupElement, GroupError> {
    if gs.len() < 2 {
        return Err(GroupError::Precondition(
            "a commutator needs at least two entries".into(),
        ));
    }
    let shape = gs[0].shape;
    let mut canon = gs[0].canon.clone();
    for g in &gs[1..] {
        gs[0].check_same(g)?;
        canon = unit_commutator(&canon, &g.canon)?;
    }
    Ok(GroupElement {
        shape,
        word: WordExpr::commutator(gs.iter().map(|g| g.word.clone()).collect()),
        canon,
    })
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}
