//! Primitives of `T(V)`, the multilinear part `γ_n` and `Lie(n)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{split_word, words, FreeModule, TensorError, Word};
use crate::algebra::{shuffle_expand_indices, Shape};
use crate::exec::Execution;
use crate::linalg::{smith_kernel, submodule_equal, ExactMatrix, Submodule};
use crate::ring::RingSpec;

/// Matrix of `ψ̄ = Σ_{0<s<q} ψ_s` on the given length-`q` words; rows are
/// the `(left, right)` pairs that occur.
fn reduced_comult_matrix(ring: RingSpec, domain: &[Word], q: usize) -> Result<ExactMatrix, TensorError> {
    let mut pairs: HashMap<(Word, Word), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize)> = Vec::new();
    for (c, w) in domain.iter().enumerate() {
        for mask in 1u64..((1u64 << q) - 1) {
            let key = split_word(w, 1, mask);
            let next = pairs.len();
            let r = *pairs.entry(key).or_insert(next);
            entries.push((r, c));
        }
    }
    let mut m = ExactMatrix::zeros(ring, pairs.len(), domain.len());
    for (r, c) in entries {
        m.add_to(r, c, &BigInt::one());
    }
    Ok(m)
}

/// `P_q(T(V)) = ker ψ̄ ∩ V^{⊗q}`, in the lexicographic word basis of `V^{⊗q}`.
pub fn primitives_basis(module: FreeModule, q: usize) -> Result<Submodule, TensorError> {
    let domain = words(module.dim, 1, q);
    if q <= 1 {
        return Ok(Submodule::full(module.ring, domain.len()));
    }
    let m = reduced_comult_matrix(module.ring, &domain, q)?;
    Ok(smith_kernel(&m)?)
}

/// Multilinear words `x_{σ(1)} ... x_{σ(n)}`, lexicographic.
fn multilinear_words(n: usize) -> Vec<Word> {
    crate::algebra::admissible_words(n, n).into_iter().map(Word).collect()
}

fn word_index(dim: usize, w: &Word) -> usize {
    w.0.iter().fold(0, |acc, &i| acc * dim + (i as usize - 1))
}

/// `γ_n ⊆ V̄^{⊗n}` for `V̄ = R^n`, in the word basis of `V̄^{⊗n}`.
pub fn gamma_submodule(ring: RingSpec, n: usize) -> Result<Submodule, TensorError> {
    let ambient = n.pow(n as u32);
    let gens = multilinear_words(n)
        .iter()
        .map(|w| {
            let mut v = vec![BigInt::zero(); ambient];
            v[word_index(n, w)] = BigInt::one();
            v
        })
        .collect();
    Ok(Submodule::new(ring, ambient, gens)?)
}

/// `Lie(n)` in `γ_n` coordinates: the left-normed `[[x_{σ(1)}, ..., x_{σ(n)}]]`.
fn lie_in_gamma(ring: RingSpec, n: usize, exec: Execution) -> Result<Submodule, TensorError> {
    let basis = multilinear_words(n);
    let pos: HashMap<&[u8], usize> = basis.iter().enumerate().map(|(i, w)| (w.0.as_slice(), i)).collect();
    let shape = Shape::cohen(ring, n)?;
    let gens = exec.try_map(&basis, |sigma| -> Result<Vec<BigInt>, TensorError> {
        let ix: Vec<usize> = sigma.0.iter().map(|&i| i as usize).collect();
        let e = shuffle_expand_indices(shape, &ix)?;
        let mut v = vec![BigInt::zero(); basis.len()];
        for (m, c) in e.terms() {
            v[pos[m.indices()]] = c.clone();
        }
        Ok(v)
    })?;
    Ok(Submodule::new(ring, basis.len(), gens)?)
}

/// `Lie(n) ⊆ V̄^{⊗n}` in the word basis of `V̄^{⊗n}`.
pub fn lie_submodule(ring: RingSpec, n: usize) -> Result<Submodule, TensorError> {
    let basis = multilinear_words(n);
    let ambient = n.pow(n as u32);
    let inner = lie_in_gamma(ring, n, Execution::default())?;
    let gens = inner
        .generators()
        .iter()
        .map(|g| {
            let mut v = vec![BigInt::zero(); ambient];
            for (i, c) in g.iter().enumerate() {
                v[word_index(n, &basis[i])] = c.clone();
            }
            v
        })
        .collect();
    Ok(Submodule::new(ring, ambient, gens)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieCheck {
    pub equal: bool,
    pub gamma_rank: usize,
    pub kernel_rank: usize,
    pub lie_rank: usize,
}

/// Computes `ker(ψ̄|γ_n)` and compares it with `Lie(n)`, both in `γ_n` coordinates.
pub fn check_lie_equals_gamma_cap_primitives(
    ring: RingSpec,
    n: usize,
    exec: Execution,
) -> Result<LieCheck, TensorError> {
    if n == 0 {
        return Err(TensorError::Precondition("n must be positive".into()));
    }
    let basis = multilinear_words(n);
    let kernel = if n == 1 {
        Submodule::full(ring, 1)
    } else {
        smith_kernel(&reduced_comult_matrix(ring, &basis, n)?)?
    };
    let lie = lie_in_gamma(ring, n, exec)?;
    Ok(LieCheck {
        equal: submodule_equal(&kernel, &lie)?,
        gamma_rank: basis.len(),
        kernel_rank: kernel.rank()?,
        lie_rank: lie.rank()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> RingSpec {
        RingSpec::modular(2).unwrap()
    }

    #[test]
    fn primitive_examples() {
        let v2 = FreeModule::new(RingSpec::Z, 2).unwrap();
        assert_eq!(primitives_basis(v2, 1).unwrap().rank().unwrap(), 2);
        let p = primitives_basis(v2, 2).unwrap();
        assert_eq!(p.rank().unwrap(), 1);
        let bracket: Vec<BigInt> = [0, 1, -1, 0].iter().map(|&c| BigInt::from(c)).collect();
        assert!(p.contains(&bracket).unwrap());
        let v1 = FreeModule::new(z2(), 1).unwrap();
        assert_eq!(primitives_basis(v1, 2).unwrap().rank().unwrap(), 1);
        let v1z = FreeModule::new(RingSpec::Z, 1).unwrap();
        assert_eq!(primitives_basis(v1z, 2).unwrap().rank().unwrap(), 0);
    }

    #[test]
    fn gamma_and_lie_ranks() {
        assert_eq!(gamma_submodule(RingSpec::Z, 2).unwrap().rank().unwrap(), 2);
        let l2 = lie_submodule(RingSpec::Z, 2).unwrap();
        assert_eq!(l2.rank().unwrap(), 1);
        assert_eq!(
            l2.normal_form().unwrap(),
            vec![[0, 1, -1, 0].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()]
        );
        assert_eq!(lie_submodule(RingSpec::Z, 3).unwrap().rank().unwrap(), 2);
        assert!(lie_submodule(RingSpec::Z, 3)
            .unwrap()
            .is_submodule_of(&gamma_submodule(RingSpec::Z, 3).unwrap())
            .unwrap());
    }

    #[test]
    fn lie_is_gamma_cap_primitives() {
        for (ring, n) in [
            (RingSpec::Z, 2),
            (RingSpec::Z, 3),
            (z2(), 3),
            (RingSpec::modular(3).unwrap(), 3),
            (RingSpec::Z, 1),
        ] {
            let c = check_lie_equals_gamma_cap_primitives(ring, n, Execution::Parallel).unwrap();
            assert!(c.equal, "{ring} n={n}: {c:?}");
            assert_eq!(c.lie_rank, (1..n).product::<usize>());
        }
    }

    #[test]
    fn composite_modulus_is_unsupported() {
        let r = check_lie_equals_gamma_cap_primitives(RingSpec::modular(6).unwrap(), 3, Execution::Sequential);
        assert!(matches!(r, Err(TensorError::Linalg(_))));
    }
}
