//! Brute-force description of the natural maps `V^{⊗n} -> V^{⊗p}` on a
//! small free module `V = R^d`.
//!
//! A map commuting with every basis permutation is determined by one value per
//! orbit of `(target word, source word)` pairs under simultaneous relabelling.
//! Naturality for a transvection, a scaling and a coordinate projection then
//! cuts this space down; the result is compared with the span of the place
//! permutations `x_1 ⊗ ... ⊗ x_n -> x_{σ(1)} ⊗ ... ⊗ x_{σ(n)}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{words, TensorError, Word};
use crate::exec::Execution;
use crate::linalg::{smith_kernel, submodule_equal, ExactMatrix, Submodule};
use crate::ring::RingSpec;

/// Relabels letters in order of first appearance in `src ++ dst`.
fn canonical_pair(src: &[u8], dst: &[u8]) -> Vec<u8> {
    let mut seen = [0u8; 256];
    let mut next = 1u8;
    src.iter()
        .chain(dst)
        .map(|&c| {
            if seen[c as usize] == 0 {
                seen[c as usize] = next;
                next += 1;
            }
            seen[c as usize]
        })
        .collect()
}

/// Orbits of `(src, dst)` word pairs under `Σ_d`, with each pair's orbit index.
struct Orbits {
    count: usize,
    index: HashMap<(Word, Word), usize>,
}

fn orbits(d: usize, n: usize, p: usize) -> Orbits {
    let mut reps: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut index = HashMap::new();
    for src in words(d, 1, n) {
        for dst in words(d, 1, p) {
            let key = canonical_pair(&src.0, &dst.0);
            let next = reps.len();
            let o = *reps.entry(key).or_insert(next);
            index.insert((src.clone(), dst), o);
        }
    }
    Orbits {
        count: reps.len(),
        index,
    }
}

/// A linear endomorphism of `R^d` by images of basis vectors:
/// `images[i]` lists `(j, c)` with `e_{i+1} -> Σ c e_j`.
type Endo = Vec<Vec<(u8, i64)>>;

fn tensor_power_image(f: &Endo, w: &Word) -> Vec<(Word, BigInt)> {
    let mut acc: Vec<(Vec<u8>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for &letter in &w.0 {
        let mut next = Vec::new();
        for (prefix, c) in &acc {
            for &(j, fc) in &f[letter as usize - 1] {
                let mut p = prefix.clone();
                p.push(j);
                next.push((p, c * fc));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(w, c)| (Word(w), c)).collect()
}

fn test_maps(d: usize) -> Vec<Endo> {
    let identity_on = |i: usize| vec![(i as u8 + 1, 1i64)];
    let mut transvection: Endo = (0..d).map(identity_on).collect();
    let mut scaling: Endo = (0..d).map(identity_on).collect();
    let mut projection: Endo = (0..d).map(identity_on).collect();
    if d >= 2 {
        transvection[0] = vec![(1, 1), (2, 1)];
    }
    scaling[0] = vec![(1, 2)];
    projection[0] = vec![];
    vec![transvection, scaling, projection]
}

/// Rows of the constraints `φ ∘ f^{⊗n} = f^{⊗p} ∘ φ` in orbit coordinates.
fn naturality_rows(d: usize, n: usize, p: usize, orb: &Orbits, f: &Endo, exec: Execution) -> Vec<Vec<BigInt>> {
    let sources = words(d, 1, n);
    let targets = words(d, 1, p);
    let per_source = exec.map(&sources, |u| {
        let fu = tensor_power_image(f, u);
        let mut rows = Vec::new();
        for x in &targets {
            let mut row = vec![BigInt::zero(); orb.count];
            // (φ ∘ f^{⊗n})(u) at x
            for (w, c) in &fu {
                row[orb.index[&(w.clone(), x.clone())]] += c;
            }
            // (f^{⊗p} ∘ φ)(u) at x
            for y in &targets {
                let fy = tensor_power_image(f, y);
                if let Some((_, c)) = fy.iter().find(|(w, _)| w == x) {
                    row[orb.index[&(u.clone(), y.clone())]] -= c;
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
        rows
    });
    let mut rows: Vec<Vec<BigInt>> = per_source.into_iter().flatten().collect();
    rows.sort();
    rows.dedup();
    rows
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub d: usize,
    pub n: usize,
    pub p: usize,
    /// Dimension of the maps commuting with basis permutations only.
    pub permutation_equivariant_rank: usize,
    /// Rank of the maps natural for the permutation, transvection, scaling and projection maps.
    pub natural_rank: usize,
    /// Rank spanned by place permutations (0 when `n != p`).
    pub place_permutation_rank: usize,
    /// Whether the natural maps are exactly the span of the place permutations.
    pub matches_place_permutations: bool,
}

/// Solves for the natural maps `V^{⊗n} -> V^{⊗p}` with `V = R^d`.
pub fn natural_maps(
    ring: RingSpec,
    d: usize,
    n: usize,
    p: usize,
    exec: Execution,
) -> Result<RigidityReport, TensorError> {
    if d == 0 || d > 4 || n > 4 || p > 4 {
        return Err(TensorError::Precondition(
            "rigidity search is limited to d, n, p <= 4".into(),
        ));
    }
    let orb = orbits(d, n, p);
    let maps = test_maps(d);
    let mut rows = Vec::new();
    for f in &maps {
        rows.extend(naturality_rows(d, n, p, &orb, f, exec));
    }
    let system = ExactMatrix::from_rows_with_cols(ring, orb.count, rows)?;
    let natural = smith_kernel(&system)?;
    let perms: Vec<Vec<BigInt>> = if n == p {
        permutations(n)
            .into_iter()
            .map(|sigma| {
                let mut v = vec![BigInt::zero(); orb.count];
                let mut hit = vec![false; orb.count];
                for u in words(d, 1, n) {
                    let x = Word(sigma.iter().map(|&s| u.0[s]).collect());
                    let o = orb.index[&(u.clone(), x)];
                    if !hit[o] {
                        hit[o] = true;
                        v[o] = BigInt::one();
                    }
                }
                v
            })
            .collect()
    } else {
        Vec::new()
    };
    let span = Submodule::new(ring, orb.count, perms)?;
    Ok(RigidityReport {
        d,
        n,
        p,
        permutation_equivariant_rank: orb.count,
        natural_rank: natural.rank()?,
        place_permutation_rank: span.rank()?,
        matches_place_permutations: submodule_equal(&natural, &span)?,
    })
}
