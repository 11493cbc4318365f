//! Generator substitutions shared by the algebra projections `π_j` and the
//! group maps `p_j`, `s_j` and the window projections.

use std::fmt;
use std::str::FromStr;

/// How the window projection `p_{j+{1,...,l}}` renumbers the surviving generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowConvention {
    /// Kill `j+1..=j+l` and shift every index above the window down by one,
    /// exactly as the published case table reads. The codomain then needs
    /// `l n - 1` generators.
    #[default]
    Verbatim,
    /// Kill the `j`-th block `j l+1..=j l+l` and shift everything above it
    /// down by `l`, landing in `l (n-1)` generators.
    BlockAligned,
}

impl fmt::Display for WindowConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowConvention::Verbatim => "verbatim",
            WindowConvention::BlockAligned => "block",
        })
    }
}

impl FromStr for WindowConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(WindowConvention::Verbatim),
            "block" => Ok(WindowConvention::BlockAligned),
            other => Err(format!("unknown window convention `{other}` (verbatim|block)")),
        }
    }
}

/// A map on generator indices: `image[i-1]` is the new index of generator `i`,
/// or `None` if generator `i` is sent to the identity (group) / zero (algebra).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    source_n: usize,
    target_n: usize,
    image: Vec<Option<u8>>,
}

impl IndexMap {
    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn target_n(&self) -> usize {
        self.target_n
    }

    pub fn apply(&self, i: u8) -> Option<u8> {
        self.image[i as usize - 1]
    }

    /// Image of a block; `None` as soon as one entry is killed.
    pub fn apply_all(&self, ix: &[u8]) -> Option<Vec<u8>> {
        ix.iter().map(|&i| self.apply(i)).collect()
    }

    /// `p_j` / `π_j`: `i -> i` for `i < j`, killed for `i = j`, `i -> i-1` above. `1 <= j <= n`.
    pub fn face(n: usize, j: usize) -> Option<IndexMap> {
        if j < 1 || j > n {
            return None;
        }
        let image = (1..=n)
            .map(|i| match i.cmp(&j) {
                std::cmp::Ordering::Less => Some(i as u8),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some((i - 1) as u8),
            })
            .collect();
        Some(IndexMap {
            source_n: n,
            target_n: n - 1,
            image,
        })
    }

    /// `s_j` from `n` to `n+1` generators: `i -> i` for `i < j`, `i -> i+1` otherwise. `1 <= j <= n+1`.
    pub fn coface(n: usize, j: usize) -> Option<IndexMap> {
        if j < 1 || j > n + 1 {
            return None;
        }
        let image = (1..=n)
            .map(|i| Some(if i < j { i as u8 } else { (i + 1) as u8 }))
            .collect();
        Some(IndexMap {
            source_n: n,
            target_n: n + 1,
            image,
        })
    }

    /// `p_{j+{1,...,l}}` on `l n` generators, `0 <= j <= n-1`.
    pub fn window(conv: WindowConvention, l: usize, n: usize, j: usize) -> Option<IndexMap> {
        if l == 0 || n == 0 || j >= n {
            return None;
        }
        let total = l * n;
        let (lo, hi, shift) = match conv {
            WindowConvention::Verbatim => (j + 1, j + l, 1),
            WindowConvention::BlockAligned => (j * l + 1, j * l + l, l),
        };
        let image = (1..=total)
            .map(|i| {
                if i < lo {
                    Some(i as u8)
                } else if i <= hi {
                    None
                } else {
                    Some((i - shift) as u8)
                }
            })
            .collect();
        Some(IndexMap {
            source_n: total,
            target_n: total - shift,
            image,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_table() {
        let p2 = IndexMap::face(3, 2).unwrap();
        assert_eq!([p2.apply(1), p2.apply(2), p2.apply(3)], [Some(1), None, Some(2)]);
        assert_eq!(p2.target_n(), 2);
        assert!(IndexMap::face(3, 0).is_none());
        assert!(IndexMap::face(3, 4).is_none());
    }

    #[test]
    fn coface_table() {
        let s1 = IndexMap::coface(2, 1).unwrap();
        assert_eq!([s1.apply(1), s1.apply(2)], [Some(2), Some(3)]);
        let s3 = IndexMap::coface(2, 3).unwrap();
        assert_eq!([s3.apply(1), s3.apply(2)], [Some(1), Some(2)]);
    }

    #[test]
    fn window_tables() {
        let v = IndexMap::window(WindowConvention::Verbatim, 2, 2, 0).unwrap();
        assert_eq!(
            (1..=4).map(|i| v.apply(i)).collect::<Vec<_>>(),
            vec![None, None, Some(2), Some(3)]
        );
        assert_eq!(v.target_n(), 3);
        let b = IndexMap::window(WindowConvention::BlockAligned, 2, 2, 1).unwrap();
        assert_eq!(
            (1..=4).map(|i| b.apply(i)).collect::<Vec<_>>(),
            vec![Some(1), Some(2), None, None]
        );
        assert_eq!(b.target_n(), 2);
        assert!(IndexMap::window(WindowConvention::Verbatim, 2, 2, 2).is_none());
    }
}
