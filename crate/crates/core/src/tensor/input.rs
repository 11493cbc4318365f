//! Elements of `C(V)^{⊗n}` whose slots are each the unit or a vector,
//! written `1 (x) [1,0] (x) [0,1]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FreeModule, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slot {
    Unit,
    /// Coefficients on `e_1, ..., e_m`, as written.
    Vector(Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CTensorInput {
    pub slots: Vec<Slot>,
}

impl CTensorInput {
    /// The pure tensor of basis elements with labels `0` (unit) or `i` (`e_i`).
    pub fn from_labels(dim: usize, labels: &[u8]) -> Self {
        CTensorInput {
            slots: labels
                .iter()
                .map(|&l| {
                    if l == 0 {
                        Slot::Unit
                    } else {
                        let mut v = vec![BigInt::zero(); dim];
                        v[l as usize - 1] = BigInt::from(1);
                        Slot::Vector(v)
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// `ε` of the input: `1` if every slot is the unit, else `0`.
    pub fn counit(&self) -> BigInt {
        BigInt::from(self.slots.iter().all(|s| *s == Slot::Unit) as u8)
    }

    pub fn check(&self, module: &FreeModule, n: usize) -> Result<(), TensorError> {
        if self.slots.len() != n {
            return Err(TensorError::Shape(format!(
                "input has {} slots, expected {n}",
                self.slots.len()
            )));
        }
        for s in &self.slots {
            if let Slot::Vector(v) = s {
                if v.len() != module.dim {
                    return Err(TensorError::Shape(format!(
                        "vector of length {}, expected {}",
                        v.len(),
                        module.dim
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CTensorInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(" (x) ")?;
            }
            match s {
                Slot::Unit => f.write_str("1")?,
                Slot::Vector(v) => {
                    f.write_str("[")?;
                    for (j, c) in v.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str("]")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses the `(x)`-separated slot list.
pub fn parse_input(s: &str) -> Result<CTensorInput, TensorError> {
    let err = |pos: usize, msg: &str| TensorError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let mut slots = Vec::new();
    let mut offset = 0;
    for part in s.split("(x)") {
        let t = part.trim();
        let at = offset + part.len() - part.trim_start().len();
        offset += part.len() + 3;
        if t == "1" {
            slots.push(Slot::Unit);
            continue;
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| err(at, "expected `1` or `[c1,...,cm]`"))?;
        let coeffs = inner
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| err(at, "bad coefficient")))
            .collect::<Result<Vec<_>, _>>()?;
        slots.push(Slot::Vector(coeffs));
    }
    Ok(CTensorInput { slots })
}

/// Basis of `C(V)^{⊗n}` as slot labels (`0` = unit, `i` = `e_i`), restricted to
/// at most `max_vectors` vector slots, in lexicographic order of labels.
pub fn basis_inputs(n: usize, dim: usize, max_vectors: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, dim: usize, budget: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        cur.push(0);
        go(n, dim, budget, cur, out);
        cur.pop();
        if budget > 0 {
            for i in 1..=dim as u8 {
                cur.push(i);
                go(n, dim, budget - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, dim, max_vectors, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The tensor-product coproduct of `C(V)^{⊗n}` on a basis input: every subset
/// `S` of the vector slots contributes `z_S ⊗ z_{S^c}`, units filling the gaps.
pub fn split_input(labels: &[u8]) -> Vec<(Vec<u8>, Vec<u8>)> {
    let vec_slots: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] != 0).collect();
    (0u64..(1u64 << vec_slots.len()))
        .map(|mask| {
            let mut left = vec![0u8; labels.len()];
            let mut right = vec![0u8; labels.len()];
            for (b, &i) in vec_slots.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    left[i] = labels[i];
                } else {
                    right[i] = labels[i];
                }
            }
            (left, right)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["1 (x) [1,0] (x) [0,1]", "[2,-3]", "1"] {
            assert_eq!(parse_input(s).unwrap().to_string(), s);
        }
        assert!(parse_input("2 (x) [1]").is_err());
        assert!(parse_input("[1,,2]").is_err());
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis_inputs(2, 2, 2).len(), 9);
        assert_eq!(basis_inputs(3, 2, 1).len(), 1 + 3 * 2);
        assert_eq!(basis_inputs(2, 3, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn splits() {
        let s = split_input(&[1, 0, 2]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(&(vec![1, 0, 0], vec![0, 0, 2])));
        assert!(s.contains(&(vec![0, 0, 0], vec![1, 0, 2])));
        assert_eq!(split_input(&[0, 0]), vec![(vec![0, 0], vec![0, 0])]);
    }
}
