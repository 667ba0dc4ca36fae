//! Signed permutations in window notation, and descent sets.
//!
//! A signed permutation of rank `n` is a bijection `β` of `[-n, n] \ {0}` with
//! `β(-i) = -β(i)`. It is determined by its window `[β(1), ..., β(n)]`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// An element of `B_n`, stored as its window.
///
/// Ordering is lexicographic on windows, which is the canonical order for
/// every element listing in this crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Validates a window: nonzero entries in `[-n, n]` with distinct absolute values.
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        let mut seen = alloc::vec![false; n + 1];
        for (i, &v) in window.iter().enumerate() {
            let bad = |reason| Error::Entry {
                position: i + 1,
                entry: v.to_string(),
                reason,
            };
            if v == 0 {
                return Err(bad("zero entry"));
            }
            let a = v.unsigned_abs() as usize;
            if a > n {
                return Err(bad("value out of range"));
            }
            if seen[a] {
                return Err(bad("duplicate absolute value"));
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    /// Caller guarantees the window is valid.
    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(Self::new(window.clone()).is_ok());
        Self { window }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    /// `β(i)` for any `i ∈ [-n, n] \ {0}`.
    pub fn apply(&self, i: i32) -> i32 {
        debug_assert!(i != 0 && i.unsigned_abs() as usize <= self.rank());
        let v = self.window[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn inverse(&self) -> Self {
        let mut window = alloc::vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            window[v.unsigned_abs() as usize - 1] = if v < 0 { -pos } else { pos };
        }
        Self { window }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(Self {
            window: other.window.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    /// Number of negative window entries (`N1`).
    pub fn negatives(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    /// Membership in `D_n`.
    pub fn is_even_signed(&self) -> bool {
        self.negatives().is_multiple_of(2)
    }

    /// True when every entry is positive, i.e. the element lies in `S_n`.
    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    pub fn is_increasing(&self) -> bool {
        self.window.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Parses `"[a1,a2,...,an]"`; whitespace around entries is ignored.
    fn from_str(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Syntax("expected a bracketed list like [2,-1,3]".into()))?;
        if inner.trim().is_empty() {
            return Err(Error::EmptyWindow);
        }
        let mut window = Vec::new();
        for (i, entry) in inner.split(',').enumerate() {
            let entry = entry.trim();
            let v = entry.parse::<i32>().map_err(|_| Error::Entry {
                position: i + 1,
                entry: entry.to_string(),
                reason: "not an integer",
            })?;
            window.push(v);
        }
        Self::new(window)
    }
}

/// A subset `M = {m_1 < ... < m_t}` of `[0, n-1]`.
///
/// Positions beyond `t` follow the convention `m_{t+1} = n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DescentSet {
    n: usize,
    members: Vec<u32>,
}

impl DescentSet {
    /// Members may come in any order; duplicates are merged.
    pub fn new(n: usize, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m as usize >= n) {
            return Err(Error::DescentOutOfRange {
                member: bad as i64,
                max: n.saturating_sub(1),
            });
        }
        Ok(Self { n, members })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    /// Builds the set from a bitmask over positions `0..n`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            n,
            members: (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    /// Parses `"0,2,5"`; the empty string is the empty set.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(text);
        if text.trim().is_empty() {
            return Ok(Self::empty(n));
        }
        let mut members = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let v: i64 = part
                .parse()
                .map_err(|_| Error::DescentSyntax(String::from(part)))?;
            if v < 0 || v as usize >= n {
                return Err(Error::DescentOutOfRange {
                    member: v,
                    max: n.saturating_sub(1),
                });
            }
            members.push(v as u32);
        }
        Self::new(n, members)
    }

    /// All `2^n` subsets of `[0, n-1]`, ordered by bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = DescentSet> {
        (0..1u64 << n).map(move |mask| Self::from_mask(n, mask))
    }

    /// All subsets of this set, ordered by bitmask.
    pub fn subsets(&self) -> impl Iterator<Item = DescentSet> + '_ {
        (0..1u64 << self.members.len()).map(move |pick| Self {
            n: self.n,
            members: self
                .members
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, &m| acc | 1 << m)
    }

    pub fn is_subset(&self, other: &DescentSet) -> bool {
        self.mask() & !other.mask() == 0
    }

    /// `m_k` for `1 <= k <= t + 1`, with `m_{t+1} = n`.
    pub fn m(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.len() + 1);
        self.members.get(k - 1).map_or(self.n, |&m| m as usize)
    }

    pub fn with(&self, i: u32) -> Result<Self> {
        Self::new(self.n, self.members.iter().copied().chain(Some(i)))
    }

    /// Block sizes `m_1, m_2 - m_1, ..., n - m_t`. The empty set gives `[n]`.
    pub fn parts(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut parts = Vec::with_capacity(self.len() + 1);
        for k in 1..=self.len() + 1 {
            let m = self.m(k);
            parts.push(m - prev);
            prev = m;
        }
        parts
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}
