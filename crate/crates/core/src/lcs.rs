//! Admissible bracket bases of the lower central series quotients of `K_n(k)`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{admissible_words, basis, shuffle_expand, AlgebraElement, AlgebraError, Monomial, Shape};
use crate::exec::Execution;
use crate::group::{group_commutator, GroupElement, GroupError};
use crate::linalg::{ExactMatrix, LinalgError, Submodule};
use crate::ring::RingSpec;
use crate::tensor::rigidity::permutations;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Length-`k` sequences of distinct entries of `1..=n`, lexicographic.
pub fn admissible_sequences(n: usize, k: usize) -> Vec<Vec<u8>> {
    admissible_words(n, k)
}

/// `[[y_{I_1}, y_{I_{σ(2)}}, ..., y_{I_{σ(t)}}]]` with `I_1 < ... < I_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleBracket {
    blocks: Vec<Vec<u8>>,
    /// `σ(2), ..., σ(t)` as 0-based block positions.
    sigma: Vec<usize>,
}

impl AdmissibleBracket {
    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The blocks in bracket order `I_1, I_{σ(2)}, ..., I_{σ(t)}`.
    pub fn ordered_blocks(&self) -> Vec<&[u8]> {
        std::iter::once(0)
            .chain(self.sigma.iter().copied())
            .map(|i| self.blocks[i].as_slice())
            .collect()
    }

    /// The leading monomial `y_{I_1} y_{I_{σ(2)}} ... y_{I_{σ(t)}}`.
    pub fn leading_monomial(&self) -> Monomial {
        Monomial::new(self.ordered_blocks().concat()).expect("admissible blocks are disjoint")
    }

    fn block_indices(&self) -> Vec<Vec<usize>> {
        self.ordered_blocks()
            .iter()
            .map(|b| b.iter().map(|&i| i as usize).collect())
            .collect()
    }

    /// The bracket expanded in `A_n[k]`.
    pub fn expand(&self, shape: Shape) -> Result<AlgebraElement, AlgebraError> {
        let gens = self
            .block_indices()
            .iter()
            .map(|b| AlgebraElement::block_generator(shape, b))
            .collect::<Result<Vec<_>, _>>()?;
        shuffle_expand(&gens)
    }

    /// The matching group commutator of `x_{I_1}, x_{I_{σ(2)}}, ...` in `K_n(k)`.
    pub fn group_element(&self, shape: Shape) -> Result<GroupElement, GroupError> {
        let gens = self
            .block_indices()
            .iter()
            .map(|b| GroupElement::block_generator(shape, b, 1))
            .collect::<Result<Vec<_>, _>>()?;
        if gens.len() == 1 {
            return Ok(gens.into_iter().next().expect("one block"));
        }
        group_commutator(&gens)
    }
}

impl fmt::Display for AdmissibleBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[[")?;
        for (p, b) in self.ordered_blocks().iter().enumerate() {
            if p > 0 {
                f.write_str(",")?;
            }
            if b.len() == 1 {
                write!(f, "y{}", b[0])?;
            } else {
                let parts: Vec<String> = b.iter().map(u8::to_string).collect();
                write!(f, "{{{}}}", parts.join("|"))?;
            }
        }
        f.write_str("]]")
    }
}

/// Increasing chains `I_1 < ... < I_t` of admissible `k`-sequences with
/// pairwise disjoint entries.
fn increasing_chains(n: usize, k: usize, t: usize) -> Vec<Vec<Vec<u8>>> {
    fn go(
        seqs: &[Vec<u8>],
        masks: &[u64],
        start: usize,
        t: usize,
        used: u64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<u8>>>,
    ) {
        if cur.len() == t {
            out.push(cur.iter().map(|&i| seqs[i].clone()).collect());
            return;
        }
        for i in start..seqs.len() {
            if masks[i] & used == 0 {
                cur.push(i);
                go(seqs, masks, i + 1, t, used | masks[i], cur, out);
                cur.pop();
            }
        }
    }
    let seqs = admissible_sequences(n, k);
    let masks: Vec<u64> = seqs
        .iter()
        .map(|s| s.iter().fold(0, |m, &i| m | 1 << (i - 1)))
        .collect();
    let mut out = Vec::new();
    if t > 0 && k * t <= n {
        go(&seqs, &masks, 0, t, 0, &mut Vec::with_capacity(t), &mut out);
    }
    out
}

/// Basis brackets of degree `t`; empty when `kt > n` or `t = 0`.
pub fn lcs_quotient_basis(n: usize, k: usize, t: usize) -> Vec<AdmissibleBracket> {
    let mut out = Vec::new();
    for blocks in increasing_chains(n, k, t) {
        for perm in permutations(t - 1) {
            out.push(AdmissibleBracket {
                blocks: blocks.clone(),
                sigma: perm.iter().map(|&p| p + 1).collect(),
            });
        }
    }
    out
}

/// Coefficient of each bracket's leading monomial in every expanded bracket.
/// Rows are brackets, columns their leading monomials, both in basis order.
pub fn pairing_matrix(n: usize, k: usize, t: usize) -> Result<ExactMatrix, LcsError> {
    pairing_matrix_with(n, k, t, Execution::default())
}

pub fn pairing_matrix_with(n: usize, k: usize, t: usize, exec: Execution) -> Result<ExactMatrix, LcsError> {
    let shape = Shape::new(RingSpec::Z, n, k)?;
    let brackets = lcs_quotient_basis(n, k, t);
    let duals: Vec<Monomial> = brackets.iter().map(AdmissibleBracket::leading_monomial).collect();
    let rows = exec.try_map(&brackets, |b| -> Result<Vec<BigInt>, LcsError> {
        let e = b.expand(shape)?;
        Ok(duals.iter().map(|m| e.coefficient(m)).collect())
    })?;
    Ok(ExactMatrix::from_rows_with_cols(RingSpec::Z, duals.len(), rows)?)
}

/// Span of the expanded basis brackets in the monomial basis of `A_n[k]` in degree `t`.
pub fn lcs_span(n: usize, k: usize, t: usize, ring: RingSpec, exec: Execution) -> Result<Submodule, LcsError> {
    let shape = Shape::new(ring, n, k)?;
    let monomials = basis(n, k, t);
    let brackets = lcs_quotient_basis(n, k, t);
    let gens = exec.try_map(&brackets, |b| -> Result<Vec<BigInt>, LcsError> {
        let e = b.expand(shape)?;
        Ok(monomials.iter().map(|m| e.coefficient(m)).collect())
    })?;
    Ok(Submodule::new(ring, monomials.len(), gens)?)
}

/// Rank of [`lcs_span`]; fails for composite moduli.
pub fn lcs_rank(n: usize, k: usize, t: usize, ring: RingSpec) -> Result<usize, LcsError> {
    Ok(lcs_span(n, k, t, ring, Execution::default())?.rank()?)
}
