use std::cmp::Ordering;

/// Largest generator count supported; admissibility is tracked in a `u64` mask.
pub const MAX_GENERATORS: usize = 64;

/// An admissible word `y_{i_1} ... y_{i_t}`: pairwise distinct indices in `1..=n`.
///
/// Block monomials of `A_n[k]` are stored flattened, so a word of `t` blocks
/// is a monomial of length `k t`; the block size lives on the element.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    indices: Vec<u8>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// `None` when some index repeats, i.e. the word is zero in the algebra.
    pub fn new(indices: Vec<u8>) -> Option<Self> {
        let mut seen = 0u64;
        for &i in &indices {
            debug_assert!(i >= 1 && (i as usize) <= MAX_GENERATORS);
            let bit = 1u64 << (i - 1);
            if seen & bit != 0 {
                return None;
            }
            seen |= bit;
        }
        Some(Monomial { indices })
    }

    pub fn from_slice(indices: &[u8]) -> Option<Self> {
        Self::new(indices.to_vec())
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, &i| m | (1u64 << (i - 1)))
    }

    pub fn max_index(&self) -> u8 {
        self.indices.iter().copied().max().unwrap_or(0)
    }

    /// Concatenation, or `None` if the product has a repeated index.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if self.mask() & other.mask() != 0 {
            return None;
        }
        let mut indices = Vec::with_capacity(self.len() + other.len());
        indices.extend_from_slice(&self.indices);
        indices.extend_from_slice(&other.indices);
        Some(Monomial { indices })
    }

    pub fn blocks(&self, k: usize) -> impl Iterator<Item = &[u8]> {
        self.indices.chunks(k)
    }
}

/// Graded order: shorter words first, then lexicographic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn monomial_mul(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    a.mul(b)
}

/// All length-`len` sequences of pairwise distinct indices in `1..=n`, lexicographic.
pub fn admissible_words(n: usize, len: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, len: usize, used: u64, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n as u8 {
            let bit = 1u64 << (i - 1);
            if used & bit == 0 {
                cur.push(i);
                go(n, len, used | bit, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if len <= n {
        go(n, len, 0, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// Basis monomials of degree `t` (that is, `t` blocks of size `k`) in `A_n[k]`.
pub fn basis(n: usize, k: usize, t: usize) -> Vec<Monomial> {
    assert!(k >= 1, "block size must be positive");
    admissible_words(n, k * t)
        .into_iter()
        .map(|w| Monomial { indices: w })
        .collect()
}
