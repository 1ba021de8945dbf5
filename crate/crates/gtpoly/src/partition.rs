//! Integer partitions and compositions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A partition: weakly decreasing list of non-negative integers.
///
/// Two partitions are equal iff they agree after stripping trailing zeros;
/// the constructor normalizes to that form. `part(i)` pads with zeros, so a
/// partition can be read at any length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::malformed(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// `i`-th part (0-based), zero beyond the last nonzero part.
    pub fn part(&self, i: usize) -> u64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u64> {
        (0..n).map(|i| self.part(i)).collect()
    }

    /// Elementwise dilation by `k`.
    pub fn scale(&self, k: u64) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p * k).collect(),
        }
    }

    /// Containment of Young diagrams: `self_i <= other_i` for all `i`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        (0..self.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// All partitions of `n`, in descending lexicographic order.
    pub fn all_of(n: u64) -> Vec<Partition> {
        fn rec(remaining: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            let mut p = remaining.min(max);
            while p >= 1 {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
                p -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.parts))
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Vec<u64> {
        p.parts
    }
}

/// An integer composition: a plain list of non-negative integers where the
/// order matters and trailing zeros are kept (they pin the number of pattern
/// rows).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition { parts }
    }

    /// The all-ones composition of length `n`.
    pub fn ones(n: usize) -> Self {
        Composition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of entries as given (including trailing zeros).
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Index of the last non-zero entry, i.e. the length in the composition
    /// sense. Zero for the all-zero composition.
    pub fn length(&self) -> usize {
        self.parts
            .iter()
            .rposition(|&p| p != 0)
            .map_or(0, |i| i + 1)
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn scale(&self, k: u64) -> Composition {
        Composition {
            parts: self.parts.iter().map(|&p| p * k).collect(),
        }
    }

    /// Re-sorts the parts into a partition (dropping zeros).
    pub fn sorted(&self) -> Partition {
        let mut parts: Vec<u64> = self.parts.iter().copied().filter(|&p| p != 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted parts form a partition")
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition::new(p.parts().to_vec())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.parts))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.parts))
    }
}

fn join(parts: &[u64]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses a comma list such as `4,3,1` (empty string = empty list).
pub fn parse_comma_list(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::malformed(format!("bad integer {t:?} in list {s:?}")))
        })
        .collect()
}
