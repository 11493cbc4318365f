//! Exact dense linear algebra over `Z` and prime fields `Z/p`.
//!
//! Over `Z` kernels come from a Smith reduction that tracks the right
//! unimodular transform, and submodule equality compares Hermite normal forms.
//! Over `Z/p` everything is plain Gaussian elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ring::{RingError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear algebra over {0} is not supported (need z or a prime field)")]
    UnsupportedRing(RingSpec),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub type Vector = Vec<BigInt>;

/// Which elimination engine a ring uses.
#[derive(Clone, Copy)]
enum Engine {
    Integers,
    Field(u64),
}

fn engine(ring: RingSpec) -> Result<Engine, LinalgError> {
    if ring.is_integers() {
        Ok(Engine::Integers)
    } else if let Some(p) = ring.prime_field() {
        Ok(Engine::Field(p))
    } else {
        Err(LinalgError::UnsupportedRing(ring))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(ring, cols, rows)
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count,
    /// so that a matrix with no rows still knows its width.
    pub fn from_rows_with_cols(ring: RingSpec, cols: usize, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.into_iter().map(|v| ring.reduce(v)));
        }
        Ok(ExactMatrix {
            ring,
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = self.ring.reduce(v);
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        let i = r * self.cols + c;
        let s = &self.data[i] + v;
        self.data[i] = self.ring.reduce(s);
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let i = r * other.cols + c;
                        out.data[i] += a * b;
                    }
                }
            }
        }
        for v in &mut out.data {
            *v = self.ring.reduce(std::mem::take(v));
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
                self.ring.reduce(s)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A finitely generated submodule of `R^ambient_dim`, given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    ring: RingSpec,
    ambient_dim: usize,
    generators: Vec<Vector>,
}

impl Submodule {
    pub fn new(ring: RingSpec, ambient_dim: usize, generators: Vec<Vector>) -> Result<Self, LinalgError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != ambient_dim {
                return Err(LinalgError::Dimension(format!(
                    "generator of length {} in ambient dimension {ambient_dim}",
                    g.len()
                )));
            }
            gens.push(g.into_iter().map(|v| ring.reduce(v)).collect());
        }
        Ok(Submodule {
            ring,
            ambient_dim,
            generators: gens,
        })
    }

    pub fn zero(ring: RingSpec, ambient_dim: usize) -> Self {
        Submodule {
            ring,
            ambient_dim,
            generators: Vec::new(),
        }
    }

    pub fn full(ring: RingSpec, ambient_dim: usize) -> Self {
        let generators = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![BigInt::zero(); ambient_dim];
                v[i] = BigInt::one();
                v
            })
            .collect();
        Submodule {
            ring,
            ambient_dim,
            generators,
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Canonical generating set: nonzero Hermite rows over `Z`, reduced
    /// echelon rows over `Z/p`. Two submodules are equal iff these agree.
    pub fn normal_form(&self) -> Result<Vec<Vector>, LinalgError> {
        match engine(self.ring)? {
            Engine::Integers => Ok(hermite_rows(self.generators.clone(), self.ambient_dim)),
            Engine::Field(p) => Ok(field_rref(&self.generators, self.ambient_dim, p)),
        }
    }

    /// Rank of the free part (over `Z`) or dimension (over `Z/p`).
    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.normal_form()?.len())
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        let mut gens = self.generators.clone();
        gens.push(v.to_vec());
        let bigger = Submodule::new(self.ring, self.ambient_dim, gens)?;
        submodule_equal(self, &bigger)
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> Result<bool, LinalgError> {
        let sum = self.sum(other)?;
        submodule_equal(&sum, other)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule, LinalgError> {
        check_compatible(self, other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Submodule::new(self.ring, self.ambient_dim, gens)
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows_with_cols(self.ring, self.ambient_dim, self.generators.clone())
            .expect("generator lengths checked on construction")
    }
}

fn check_compatible(a: &Submodule, b: &Submodule) -> Result<(), LinalgError> {
    a.ring.check_same(&b.ring)?;
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::Dimension(format!(
            "ambient dimensions {} and {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(())
}

pub fn submodule_equal(a: &Submodule, b: &Submodule) -> Result<bool, LinalgError> {
    check_compatible(a, b)?;
    Ok(a.normal_form()? == b.normal_form()?)
}

pub fn rank(m: &ExactMatrix) -> Result<usize, LinalgError> {
    match engine(m.ring)? {
        Engine::Integers => Ok(hermite_rows(m.row_vectors(), m.cols).len()),
        Engine::Field(p) => Ok(field_rref(&m.row_vectors(), m.cols, p).len()),
    }
}

/// Generators of `ker M = { v : M v = 0 }`. Over `Z` they form a lattice basis.
pub fn smith_kernel(m: &ExactMatrix) -> Result<Submodule, LinalgError> {
    match engine(m.ring)? {
        Engine::Integers => {
            let snf = smith_reduce(m, true, false);
            let q = snf.right.expect("right transform requested");
            let gens = (snf.invariants.len()..m.cols).map(|c| q.column(c)).collect();
            Submodule::new(m.ring, m.cols, gens)
        }
        Engine::Field(p) => Ok(Submodule::new(m.ring, m.cols, field_kernel(m, p))?),
    }
}

/// Nonzero diagonal of the Smith normal form of an integer matrix.
pub fn smith_invariants(m: &ExactMatrix) -> Result<Vec<BigInt>, LinalgError> {
    match engine(m.ring)? {
        Engine::Integers => Ok(smith_reduce(m, false, true).invariants),
        Engine::Field(p) => Ok(vec![BigInt::one(); field_rref(&m.row_vectors(), m.cols, p).len()]),
    }
}

/// Row-style Hermite normal form of an integer matrix (nonzero rows only).
pub fn hermite_normal_form(m: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if !m.ring.is_integers() {
        return Err(LinalgError::UnsupportedRing(m.ring));
    }
    ExactMatrix::from_rows_with_cols(m.ring, m.cols, hermite_rows(m.row_vectors(), m.cols))
}

struct SmithReduction {
    invariants: Vec<BigInt>,
    right: Option<ExactMatrix>,
}

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Diagonalizes `P M Q` by unimodular row and column operations, tracking `Q`
/// if asked. With `divisibility` the diagonal satisfies `d_i | d_{i+1}`.
fn smith_reduce(m: &ExactMatrix, track_right: bool, divisibility: bool) -> SmithReduction {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = m.row_vectors();
    // q is stored transposed: q_cols[c] is column c of Q.
    let mut q_cols: Vec<Vec<BigInt>> = if track_right {
        (0..cols)
            .map(|c| {
                let mut v = vec![BigInt::zero(); cols];
                v[c] = BigInt::one();
                v
            })
            .collect()
    } else {
        Vec::new()
    };

    let col_op = |a: &mut Vec<Vec<BigInt>>, q_cols: &mut Vec<Vec<BigInt>>, j: usize, t: usize, f: &BigInt| {
        // column j -= f * column t
        for row in a.iter_mut() {
            if !row[t].is_zero() {
                let d = f * &row[t];
                row[j] -= d;
            }
        }
        if track_right {
            let (src, dst) = if j < t {
                let (lo, hi) = q_cols.split_at_mut(t);
                (&hi[0], &mut lo[j])
            } else {
                let (lo, hi) = q_cols.split_at_mut(j);
                (&lo[t], &mut hi[0])
            };
            sub_scaled(dst, src, f);
        }
    };

    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if track_right {
                q_cols.swap(t, pj);
            }
        }

        loop {
            let mut clean = true;
            let pivot = a[t][t].clone();
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let f = a[i][t].div_floor(&pivot);
                    let (top, rest) = a.split_at_mut(i);
                    sub_scaled(&mut rest[0][t..], &top[t][t..], &f);
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let f = a[t][j].div_floor(&pivot);
                    col_op(&mut a, &mut q_cols, j, t, &f);
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remainder in the pivot row/column into place
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                    if track_right {
                        q_cols.swap(t, best.1);
                    }
                }
                continue;
            }
            if divisibility {
                let offender = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|v| !v.is_mod_floor_zero(&pivot)));
                if let Some(i) = offender {
                    let (top, rest) = a.split_at_mut(i);
                    let src = rest[0].clone();
                    sub_scaled(&mut top[t], &src, &BigInt::from(-1));
                    continue;
                }
            }
            break;
        }
        invariants.push(a[t][t].abs());
        t += 1;
    }

    let right = track_right.then(|| {
        let mut q = ExactMatrix::zeros(m.ring, cols, cols);
        for (c, col) in q_cols.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                q.data[r * cols + c] = v;
            }
        }
        q
    });
    SmithReduction { invariants, right }
}

trait ModFloorZero {
    fn is_mod_floor_zero(&self, m: &BigInt) -> bool;
}

impl ModFloorZero for BigInt {
    fn is_mod_floor_zero(&self, m: &BigInt) -> bool {
        self.mod_floor(m).is_zero()
    }
}

fn hermite_rows(mut a: Vec<Vector>, cols: usize) -> Vec<Vector> {
    a.retain(|r| r.iter().any(|v| !v.is_zero()));
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(b) = best else { break };
            a.swap(r, b);
            let pivot = a[r][c].clone();
            let mut clean = true;
            for i in r + 1..a.len() {
                if !a[i][c].is_zero() {
                    let f = a[i][c].div_floor(&pivot);
                    let (top, rest) = a.split_at_mut(i);
                    sub_scaled(&mut rest[0][c..], &top[r][c..], &f);
                    if !a[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for v in &mut a[r][c..] {
                    *v = -std::mem::take(v);
                }
            }
            let pivot = a[r][c].clone();
            for i in 0..r {
                if !a[i][c].is_zero() {
                    let f = a[i][c].div_floor(&pivot);
                    let (top, rest) = a.split_at_mut(r);
                    sub_scaled(&mut top[i][c..], &rest[0][c..], &f);
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|v| !v.is_zero()));
    a
}

fn to_field(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn field_echelon(rows: &[Vector], cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| to_field(v, p)).collect())
        .collect();
    let pm = p as u128;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(b) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, b);
        let inv = inv_mod(a[r][c], p) as u128;
        for v in &mut a[r][c..] {
            *v = (*v as u128 * inv % pm) as u64;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] as u128;
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for j in c..cols {
                    if src[j] != 0 {
                        dst[j] = ((dst[j] as u128 + pm - f * src[j] as u128 % pm) % pm) as u64;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

fn field_rref(rows: &[Vector], cols: usize, p: u64) -> Vec<Vector> {
    field_echelon(rows, cols, p)
        .0
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

fn field_kernel(m: &ExactMatrix, p: u64) -> Vec<Vector> {
    let (rref, pivots) = field_echelon(&m.row_vectors(), m.cols, p);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigInt::zero(); m.cols];
            v[free] = BigInt::one();
            for (row, &pc) in rref.iter().zip(&pivots) {
                if row[free] != 0 {
                    v[pc] = BigInt::from(p - row[free]);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zm(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(RingSpec::Z, rows).unwrap()
    }

    fn vecs(rows: &[Vec<i64>]) -> Vec<Vector> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn sub(ring: RingSpec, dim: usize, rows: &[Vec<i64>]) -> Submodule {
        Submodule::new(ring, dim, vecs(rows)).unwrap()
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = smith_kernel(&zm(&[vec![1, 1], vec![1, 1]])).unwrap();
        assert!(submodule_equal(&k, &sub(RingSpec::Z, 2, &[vec![1, -1]])).unwrap());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let id = ExactMatrix::identity(RingSpec::Z, 3);
        assert_eq!(smith_kernel(&id).unwrap().rank().unwrap(), 0);
        let z = ExactMatrix::zeros(RingSpec::Z, 2, 2);
        let k = smith_kernel(&z).unwrap();
        assert!(submodule_equal(&k, &Submodule::full(RingSpec::Z, 2)).unwrap());
    }

    #[test]
    fn kernel_is_saturated_over_z() {
        // ker [2 4] is spanned by (2,-1); (1, -1/2) is not integral
        let k = smith_kernel(&zm(&[vec![2, 4]])).unwrap();
        assert!(submodule_equal(&k, &sub(RingSpec::Z, 2, &[vec![2, -1]])).unwrap());
    }

    #[test]
    fn submodule_equality_examples() {
        let z = RingSpec::Z;
        assert!(submodule_equal(&sub(z, 2, &[vec![2, 0]]), &sub(z, 2, &[vec![2, 0], vec![4, 0]])).unwrap());
        assert!(!submodule_equal(&sub(z, 2, &[vec![1, 0]]), &sub(z, 2, &[vec![2, 0]])).unwrap());
        assert!(submodule_equal(
            &sub(z, 2, &[vec![1, 2], vec![0, 3]]),
            &sub(z, 2, &[vec![0, 3], vec![1, 2]])
        )
        .unwrap());
    }

    #[test]
    fn rank_examples() {
        for n in 1..5 {
            assert_eq!(rank(&ExactMatrix::identity(RingSpec::Z, n)).unwrap(), n);
        }
        assert_eq!(rank(&zm(&[vec![2]])).unwrap(), 1);
        let m2 = ExactMatrix::from_i64_rows(RingSpec::modular(2).unwrap(), &[vec![2]]).unwrap();
        assert_eq!(rank(&m2).unwrap(), 0);
    }

    #[test]
    fn composite_modulus_rejected() {
        let m = ExactMatrix::from_i64_rows(RingSpec::modular(4).unwrap(), &[vec![1]]).unwrap();
        assert!(matches!(rank(&m), Err(LinalgError::UnsupportedRing(_))));
        assert!(smith_kernel(&m).is_err());
    }

    #[test]
    fn field_kernel_mod_three() {
        let f3 = RingSpec::modular(3).unwrap();
        let m = ExactMatrix::from_i64_rows(f3, &[vec![1, 1, 1]]).unwrap();
        let k = smith_kernel(&m).unwrap();
        assert_eq!(k.rank().unwrap(), 2);
        for g in k.generators() {
            assert!(m.apply(g).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn smith_invariants_of_small_matrix() {
        let m = zm(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let inv: Vec<i64> = smith_invariants(&m)
            .unwrap()
            .iter()
            .map(|v| v.to_i64().unwrap())
            .collect();
        assert_eq!(inv, vec![2, 6, 12]);
    }

    #[test]
    fn hnf_shape() {
        let h = hermite_normal_form(&zm(&[vec![3, 1], vec![1, 1]])).unwrap();
        assert_eq!(h.row_vectors(), vecs(&[vec![1, 1], vec![0, 2]]));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            rows in 1usize..5, cols in 1usize..6,
            seed in proptest::collection::vec(-3i64..4, 30)
        ) {
            let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * cols + c]).collect()).collect();
            let m = zm(&data);
            let k = smith_kernel(&m).unwrap();
            for g in k.generators() {
                prop_assert!(m.apply(g).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert_eq!(rank(&m).unwrap() + k.rank().unwrap(), cols);
        }

        #[test]
        fn hnf_is_idempotent_and_order_free(
            seed in proptest::collection::vec(-5i64..6, 12),
            shift in 0usize..4
        ) {
            let rows: Vec<Vec<i64>> = seed.chunks(3).map(|c| c.to_vec()).collect();
            let mut rotated = rows.clone();
            rotated.rotate_left(shift);
            let a = sub(RingSpec::Z, 3, &rows);
            let b = sub(RingSpec::Z, 3, &rotated);
            let na = a.normal_form().unwrap();
            prop_assert_eq!(&na, &b.normal_form().unwrap());
            let again = Submodule::new(RingSpec::Z, 3, na.clone()).unwrap().normal_form().unwrap();
            prop_assert_eq!(na, again);
        }
    }
}
