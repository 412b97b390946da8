//! Permutations of `{1, …, n}` in one-line notation.
//!
//! Composition follows the right-to-left convention `(σ∘τ)(i) = σ(τ(i))`, so that the
//! permutation-matrix map is a homomorphism: `P(σ∘τ) = P(σ)·P(τ)`.
//!
//! Internally images are stored zero-based; the text form `[2,1,3]` and
//! [`Permutation::one_line`] are one-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest degree supported by operations that enumerate all of `S_n`.
pub const MAX_DEGREE: usize = 8;

/// Parity of a permutation, the homomorphism `S_n → Z₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Cycle lengths of a permutation as a partition of its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
    parity: Parity,
    cycle_count: usize,
}

impl Permutation {
    /// Builds a permutation from one-based one-line notation.
    pub fn new(one_line: &[usize]) -> Result<Self> {
        if one_line.iter().any(|&v| v == 0) {
            return Err(Error::InvalidPermutation(format!(
                "{one_line:?}: images must be in 1..=n"
            )));
        }
        Self::from_zero_based(one_line.iter().map(|&v| v - 1).collect())
    }

    /// Builds a permutation from zero-based images.
    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                let shown: Vec<usize> = images.iter().map(|v| v + 1).collect();
                return Err(Error::InvalidPermutation(format!(
                    "{shown:?} is not a bijection on 1..={n}"
                )));
            }
        }
        Ok(Self::from_images_unchecked(images))
    }

    fn from_images_unchecked(images: Vec<usize>) -> Self {
        let cycle_count = cycles_of(&images).len();
        let parity = if (images.len() - cycle_count) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        Permutation {
            images,
            parity,
            cycle_count,
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        Self::from_images_unchecked((0..n).collect())
    }

    /// The transposition swapping one-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_cycles(n, &[&[a, b]])
    }

    /// Builds a permutation from disjoint cycles in one-based cycle notation;
    /// `(1 2 3)` maps 1→2, 2→3, 3→1.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..={n}"
                    )));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Self::from_zero_based(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image of zero-based point `i`.
    #[inline]
    pub fn map(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Zero-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// One-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = other.images.iter().map(|&j| self.images[j]).collect();
        Ok(Self::from_images_unchecked(images))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation {
            images: inv,
            parity: self.parity,
            cycle_count: self.cycle_count,
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn sign(&self) -> i32 {
        self.parity.sign()
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == v)
            .count()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycle_count
    }

    pub fn cycle_type(&self) -> CycleType {
        let lens = cycles_of(&self.images).iter().map(Vec::len).collect();
        CycleType(Partition::from_unsorted(lens).expect("cycle lengths form a partition"))
    }

    /// Disjoint cycles, one-based, each starting at its smallest point, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.images)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Cycle notation for display, e.g. `(1 2 3)(4 5)`; the identity is `()`.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }

    /// Position of this permutation in [`enumerate`] order (Lehmer code rank).
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller_after = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank = rank * (n - i) + smaller_after;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Result<Permutation> {
        let total = factorial(n);
        if rank >= total {
            return Err(Error::InvalidPermutation(format!(
                "rank {rank} out of range for degree {n}"
            )));
        }
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Ok(Self::from_images_unchecked(images))
    }

    /// First `i` (zero-based) with `σ(i) > σ(i+1)`, if any.
    pub fn first_descent(&self) -> Option<usize> {
        self.images.windows(2).position(|w| w[0] > w[1])
    }

    /// Factors `σ` into adjacent transpositions `s_k = (k+1 k+2)` (zero-based `k`) by
    /// bubble sorting the one-line form.
    ///
    /// Returns a word `[k_1, …, k_m]` with `σ = s_{k_m} ∘ … ∘ s_{k_1}`, so representation
    /// matrices multiply as `D(s_{k_m})···D(s_{k_1})`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut cur = self.images.clone();
        let mut word = Vec::new();
        while let Some(k) = cur.windows(2).position(|w| w[0] > w[1]) {
            // cur ∘ s_k swaps positions k and k+1
            cur.swap(k, k + 1);
            word.push(k);
        }
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("permutation {s:?} must look like [2,1,3]")))?;
        let images = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("permutation {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(&images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn cycles_of(images: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = images[i];
        }
        out.push(cycle);
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn check_degree(what: &'static str, n: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange {
            what,
            n,
            min: 1,
            max,
        })
    }
}

/// All `n!` permutations of degree `n` in lexicographic one-line order; index 0 is the identity.
pub fn enumerate(n: usize) -> Result<Vec<Permutation>> {
    check_degree("enumeration", n, MAX_DEGREE)?;
    let mut out = Vec::with_capacity(factorial(n));
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::from_images_unchecked(cur.clone()));
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    Ok(out)
}

/// Number of involutions (`σ² = id`) in `S_n`, via `a(n) = a(n-1) + (n-1)·a(n-2)`.
pub fn involution_count(n: usize) -> u64 {
    let (mut prev, mut cur) = (1u64, 1u64);
    for k in 2..=n as u64 {
        (prev, cur) = (cur, cur + (k - 1) * prev);
    }
    cur
}

/// Canonical representative for each cycle type of `S_n`, classes ordered
/// lexicographically ascending (so `(1^n)` first and `(n)` last).
pub fn class_representatives(n: usize) -> Vec<(CycleType, Permutation)> {
    let mut parts = crate::partition::partitions(n);
    parts.reverse();
    parts
        .into_iter()
        .map(|p| {
            let mut images = Vec::with_capacity(n);
            let mut start = 0;
            for &len in p.parts() {
                for k in 0..len {
                    images.push(start + (k + 1) % len);
                }
                start += len;
            }
            (CycleType(p), Permutation::from_images_unchecked(images))
        })
        .collect()
}
