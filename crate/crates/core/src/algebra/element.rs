use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Monomial, MAX_GENERATORS};
use super::substitution::{IndexMap, WindowConvention};
use super::AlgebraError;
use crate::ring::{RingSpec, Scalar};

/// Ring, generator count and block size of an algebra `A_n[k]` over `R`
/// (`k = 1` is the Cohen algebra `A(y_1, ..., y_n)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    pub ring: RingSpec,
    pub n: usize,
    pub k: usize,
}

impl Shape {
    pub fn new(ring: RingSpec, n: usize, k: usize) -> Result<Self, AlgebraError> {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        if k == 0 {
            return Err(AlgebraError::BadBlockSize);
        }
        Ok(Shape { ring, n, k })
    }

    pub fn cohen(ring: RingSpec, n: usize) -> Result<Self, AlgebraError> {
        Shape::new(ring, n, 1)
    }

    pub fn with_n(self, n: usize) -> Self {
        Shape { n, ..self }
    }

    /// Largest number of blocks a nonzero monomial can have.
    pub fn max_degree(&self) -> usize {
        self.n / self.k
    }
}

/// An element of `A_n[k]`: a finite map from admissible monomials to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    shape: Shape,
    terms: BTreeMap<Monomial, BigInt>,
}

impl AlgebraElement {
    pub fn zero(shape: Shape) -> Self {
        AlgebraElement {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> Self {
        Self::scalar(shape, BigInt::one())
    }

    pub fn scalar(shape: Shape, c: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(shape);
        e.add_term(Monomial::unit(), c.into());
        e
    }

    /// `c * m`; `m` must have length a multiple of `k` and indices in range.
    pub fn from_monomial(shape: Shape, m: Monomial, c: impl Into<BigInt>) -> Result<Self, AlgebraError> {
        check_monomial(&shape, &m)?;
        let mut e = Self::zero(shape);
        e.add_term(m, c.into());
        Ok(e)
    }

    /// Builds an element from raw index words; inadmissible words contribute zero.
    pub fn from_terms<I>(shape: Shape, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<u8>, BigInt)>,
    {
        let mut e = Self::zero(shape);
        for (ix, c) in terms {
            check_indices(&shape, &ix)?;
            if let Some(m) = Monomial::new(ix) {
                e.add_term(m, c);
            }
        }
        Ok(e)
    }

    /// The generator `y_i` of `A(y_1, ..., y_n)`.
    pub fn generator(shape: Shape, i: usize) -> Result<Self, AlgebraError> {
        Self::block_generator(shape, &[i])
    }

    /// The block generator `{y_{i_1}|...|y_{i_k}}`, zero when an index repeats.
    pub fn block_generator(shape: Shape, ix: &[usize]) -> Result<Self, AlgebraError> {
        if ix.len() != shape.k {
            return Err(AlgebraError::BlockLength {
                expected: shape.k,
                got: ix.len(),
            });
        }
        let ix: Vec<u8> = ix.iter().map(|&i| index_u8(&shape, i)).collect::<Result<_, _>>()?;
        Self::from_terms(shape, [(ix, BigInt::one())])
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn ring(&self) -> RingSpec {
        self.shape.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::unit()).is_one()
    }

    /// Coefficient of the unit monomial.
    pub fn augmentation(&self) -> Scalar {
        Scalar::new(self.shape.ring, self.coefficient(&Monomial::unit()))
    }

    /// Largest number of blocks among the monomials (0 for scalars and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len() / self.shape.k).max().unwrap_or(0)
    }

    /// Smallest number of blocks among the monomials, `None` for zero.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len() / self.shape.k).min()
    }

    pub fn homogeneous_part(&self, t: usize) -> Self {
        let k = self.shape.k;
        AlgebraElement {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == k * t)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let ring = self.shape.ring;
        let entry = self.terms.entry(m).or_default();
        *entry = ring.reduce(std::mem::take(entry) + c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.shape != other.shape {
            return Err(AlgebraError::ShapeMismatch(self.shape, other.shape));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let ring = self.shape.ring;
        AlgebraElement {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), ring.reduce(v * c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let ring = self.shape.ring;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.mul(mb) {
                    *acc.entry(m).or_default() += ca * cb;
                }
            }
        }
        let terms = acc
            .into_iter()
            .map(|(m, c)| (m, ring.reduce(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(AlgebraElement {
            shape: self.shape,
            terms,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.shape);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// `[a, b] = ab - ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Two-sided inverse of a unit. Writing `u = c (1 + z)` with `c = ε(u)`,
    /// `z` is nilpotent of order at most `n/k + 1` and the Neumann series terminates.
    pub fn unit_inverse(&self) -> Result<Self, AlgebraError> {
        let ring = self.shape.ring;
        let c = self.coefficient(&Monomial::unit());
        let c_inv = ring
            .inverse_value(&c)
            .ok_or_else(|| AlgebraError::NotUnit(ring.reduce(c.clone())))?;
        let normalized = self.scale(&c_inv);
        let minus_z = Self::one(self.shape).sub(&normalized)?;
        let mut sum = Self::one(self.shape);
        let mut power = Self::one(self.shape);
        for _ in 0..self.shape.max_degree() {
            power = power.mul(&minus_z)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        Ok(sum.scale(&c_inv))
    }

    /// Applies a generator substitution, dropping every monomial that
    /// contains a killed generator.
    pub fn substitute(&self, map: &IndexMap) -> Result<Self, AlgebraError> {
        if map.source_n() != self.shape.n {
            return Err(AlgebraError::GeneratorCount {
                expected: map.source_n(),
                got: self.shape.n,
            });
        }
        let shape = Shape::new(self.shape.ring, map.target_n(), self.shape.k)?;
        let mut out = Self::zero(shape);
        for (m, c) in &self.terms {
            if let Some(ix) = map.apply_all(m.indices()) {
                let m = Monomial::new(ix).expect("substitutions are injective on survivors");
                out.add_term(m, c.clone());
            }
        }
        Ok(out)
    }

    /// `π_j : A(y_1..y_n) -> A(y_1..y_{n-1})`, `1 <= j <= n`.
    pub fn project(&self, j: usize) -> Result<Self, AlgebraError> {
        let map = IndexMap::face(self.shape.n, j).ok_or(AlgebraError::IndexOutOfRange {
            index: j,
            n: self.shape.n,
        })?;
        self.substitute(&map)
    }

    /// `π_{j+{1,...,l}}` on `l n` generators, killing a length-`l` window.
    pub fn project_window(&self, conv: WindowConvention, l: usize, j: usize) -> Result<Self, AlgebraError> {
        if l == 0 || !self.shape.n.is_multiple_of(l) {
            return Err(AlgebraError::WindowShape { l, n: self.shape.n });
        }
        let blocks = self.shape.n / l;
        let map = IndexMap::window(conv, l, blocks, j).ok_or(AlgebraError::IndexOutOfRange { index: j, n: blocks })?;
        self.substitute(&map)
    }
}

fn index_u8(shape: &Shape, i: usize) -> Result<u8, AlgebraError> {
    if i == 0 || i > shape.n {
        return Err(AlgebraError::IndexOutOfRange { index: i, n: shape.n });
    }
    Ok(i as u8)
}

pub(crate) fn check_indices(shape: &Shape, ix: &[u8]) -> Result<(), AlgebraError> {
    if !ix.len().is_multiple_of(shape.k) {
        return Err(AlgebraError::BlockLength {
            expected: shape.k,
            got: ix.len() % shape.k,
        });
    }
    for &i in ix {
        index_u8(shape, i as usize)?;
    }
    Ok(())
}

fn check_monomial(shape: &Shape, m: &Monomial) -> Result<(), AlgebraError> {
    check_indices(shape, m.indices())
}

/// Left-normed `[[x_1, ..., x_t]] = [[x_1, ..., x_{t-1}], x_t]`.
pub fn iterated_bracket(xs: &[AlgebraElement]) -> Result<AlgebraElement, AlgebraError> {
    let (first, rest) = xs.split_first().ok_or(AlgebraError::EmptyBracket)?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.bracket(x))
}

/// Closed form of the left-normed bracket as a signed sum of reordered products:
/// for every subset `I` of positions `2..=t` (with complement `J`, which always
/// contains position 1) the word `x_{i_p} ... x_{i_1} x_{j_1} ... x_{j_q}`
/// enters with sign `(-1)^{|I|}`.
pub fn shuffle_expand(xs: &[AlgebraElement]) -> Result<AlgebraElement, AlgebraError> {
    let (first, _) = xs.split_first().ok_or(AlgebraError::EmptyBracket)?;
    let shape = first.shape;
    for x in xs {
        first.check_same(x)?;
    }
    let t = xs.len();
    let mut total = AlgebraElement::zero(shape);
    for mask in 0u64..(1u64 << (t - 1)) {
        let picked: Vec<usize> = (1..t).filter(|&p| mask & (1 << (p - 1)) != 0).collect();
        let mut word = AlgebraElement::one(shape);
        for &p in picked.iter().rev() {
            word = word.mul(&xs[p])?;
        }
        for p in (0..t).filter(|&p| p == 0 || mask & (1 << (p - 1)) == 0) {
            word = word.mul(&xs[p])?;
        }
        if picked.len() % 2 == 1 {
            word = word.neg();
        }
        total = total.add(&word)?;
    }
    Ok(total)
}

/// [`shuffle_expand`] on generators `y_{i_1}, ..., y_{i_t}` of `A(y_1..y_n)`.
pub fn shuffle_expand_indices(shape: Shape, indices: &[usize]) -> Result<AlgebraElement, AlgebraError> {
    let gens: Vec<AlgebraElement> = indices
        .iter()
        .map(|&i| AlgebraElement::generator(shape, i))
        .collect::<Result<_, _>>()?;
    shuffle_expand(&gens)
}
