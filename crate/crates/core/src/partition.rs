//! Integer partitions, used both as cycle types and as irrep labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `n`: positive parts in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that `parts` is weakly decreasing with no zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let n = parts.iter().sum();
        let ok = !parts.is_empty()
            && parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(Error::InvalidPartition { parts, n })
        }
    }

    /// Sorts the parts and drops zeros before validating.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.0[0];
        let parts = (0..first)
            .map(|c| self.0.iter().filter(|&&r| r > c).count())
            .collect();
        Partition(parts)
    }

    /// Number of standard Young tableaux of this shape, by the hook length formula.
    pub fn hook_dimension(&self) -> u64 {
        let n = self.size() as u64;
        let conj = self.conjugate();
        let mut num: u128 = (1..=n as u128).product();
        let mut den: u128 = 1;
        for (r, &row) in self.0.iter().enumerate() {
            for c in 0..row {
                let arm = row - c - 1;
                let leg = conj.0[c] - r - 1;
                den *= (arm + leg + 1) as u128;
            }
        }
        num /= den;
        num as u64
    }

    /// `(n)`, the one-row shape.
    pub fn trivial(n: usize) -> Partition {
        Partition(vec![n])
    }

    /// `(1^n)`, the one-column shape.
    pub fn sign(n: usize) -> Partition {
        Partition(vec![1; n])
    }

    /// `(n-1, 1)`.
    pub fn standard(n: usize) -> Partition {
        assert!(n >= 2);
        Partition::from_unsorted(vec![n - 1, 1]).expect("valid shape")
    }

    /// `(2, 1^(n-2))`, the conjugate of the standard shape.
    pub fn anti_standard(n: usize) -> Partition {
        Partition::standard(n).conjugate()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in lexicographically descending order, starting at `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}
