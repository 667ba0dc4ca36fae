//! Descent classes: brute-force filters and shuffle-block constructions.
//!
//! A descent class collects the elements whose inverse has its descents
//! inside (or exactly equal to) a fixed set `M`. Each class is also a
//! disjoint union of shuffles of a few increasing sequences, one block of
//! sequences per admissible vector `r = (r_1, ..., r_t)` with
//! `m_i <= r_i <= m_{i+1}`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{iter_group, Group};
use crate::perm::{DescentSet, SignedPermutation};
use crate::stats::{des_b_mask, des_d_mask, des_mask};

/// Which descent set defines the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Des,
    DesB,
    DesD,
}

impl Flavor {
    pub fn natural(group: Group) -> Self {
        match group {
            Group::A => Flavor::Des,
            Group::B => Flavor::DesB,
            Group::D => Flavor::DesD,
        }
    }

    pub fn mask(self, p: &SignedPermutation) -> u64 {
        match self {
            Flavor::Des => des_mask(p),
            Flavor::DesB => des_b_mask(p),
            Flavor::DesD => des_d_mask(p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Descent set of the inverse contained in `M`.
    Subset,
    /// Descent set of the inverse equal to `M`.
    Exact,
}

impl core::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset" => Ok(Mode::Subset),
            "exact" => Ok(Mode::Exact),
            other => Err(Error::InvalidArgument(alloc::format!(
                "unknown mode `{other}` (expected subset or exact)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Subset => "subset",
            Mode::Exact => "exact",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentClassSpec {
    pub group: Group,
    pub set: DescentSet,
    pub mode: Mode,
    pub flavor: Flavor,
}

impl DescentClassSpec {
    /// Uses the group's own descent flavor.
    pub fn new(group: Group, set: DescentSet, mode: Mode) -> Result<Self> {
        Self::with_flavor(group, set, mode, Flavor::natural(group))
    }

    pub fn with_flavor(group: Group, set: DescentSet, mode: Mode, flavor: Flavor) -> Result<Self> {
        if flavor != Flavor::natural(group) {
            return Err(Error::InvalidArgument(alloc::format!(
                "flavor {flavor:?} does not belong to group {group}"
            )));
        }
        if flavor == Flavor::Des && set.contains(0) {
            return Err(Error::ZeroInTypeA);
        }
        Ok(Self {
            group,
            set,
            mode,
            flavor,
        })
    }

    pub fn rank(&self) -> usize {
        self.set.rank()
    }

    pub fn admits(&self, p: &SignedPermutation) -> bool {
        let d = self.flavor.mask(&p.inverse());
        let m = self.set.mask();
        match self.mode {
            Mode::Subset => d & !m == 0,
            Mode::Exact => d == m,
        }
    }
}

/// The class by brute force over the whole group, in lexicographic order.
pub fn descent_class_filter(spec: &DescentClassSpec) -> Vec<SignedPermutation> {
    iter_group(spec.group, spec.rank())
        .filter(|p| spec.admits(p))
        .collect()
}

/// Groups all of `B_n` by the exact `Des_D` of the inverse, not only `D_n`.
pub fn des_d_tabulation(n: usize) -> Vec<(DescentSet, Vec<SignedPermutation>)> {
    let mut buckets: Vec<Vec<SignedPermutation>> = vec![Vec::new(); 1 << n];
    for p in iter_group(Group::B, n) {
        buckets[des_d_mask(&p.inverse()) as usize].push(p);
    }
    buckets
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(mask, v)| (DescentSet::from_mask(n, mask as u64), v))
        .collect()
}

/// Parity condition a block was selected under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    None,
    Even,
    Odd,
}

impl Parity {
    pub fn name(self) -> &'static str {
        match self {
            Parity::None => "none",
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Sequences whose absolute values partition `[n]`, plus the parity tag.
///
/// Blocks coming straight from the class lemmas have increasing sequences;
/// the chain pieces of [`chain_blocks`] need not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShuffleBlock {
    sequences: Vec<Vec<i32>>,
    parity: Parity,
}

impl ShuffleBlock {
    /// Empty sequences are dropped.
    pub fn new(sequences: Vec<Vec<i32>>, parity: Parity) -> Result<Self> {
        let sequences: Vec<Vec<i32>> = sequences.into_iter().filter(|s| !s.is_empty()).collect();
        let n: usize = sequences.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &v in sequences.iter().flatten() {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a] {
                return Err(Error::InvalidBlock(alloc::format!("{sequences:?}")));
            }
            seen[a] = true;
        }
        if n == 0 {
            return Err(Error::InvalidBlock("no entries".to_string()));
        }
        Ok(Self { sequences, parity })
    }

    pub fn sequences(&self) -> &[Vec<i32>] {
        &self.sequences
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn rank(&self) -> usize {
        self.sequences.iter().map(Vec::len).sum()
    }

    pub fn is_increasing(&self) -> bool {
        self.sequences
            .iter()
            .all(|s| s.windows(2).all(|w| w[0] < w[1]))
    }

    /// Number of interleavings: the multinomial of the sequence lengths.
    pub fn count(&self) -> u128 {
        let mut total = 0u128;
        let mut acc = 1u128;
        for s in &self.sequences {
            for k in 1..=s.len() as u128 {
                total += 1;
                acc = acc * total / k;
            }
        }
        acc
    }
}

impl fmt::Display for ShuffleBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sequences.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for (j, v) in s.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Interleavings of a block, in lexicographic order of the choice vector
/// (which sequence supplies each position).
pub struct Shuffles<'a> {
    block: &'a ShuffleBlock,
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for Shuffles<'_> {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.done {
            return None;
        }
        let mut cursor = vec![0usize; self.block.sequences.len()];
        let window = self
            .choice
            .iter()
            .map(|&s| {
                let v = self.block.sequences[s][cursor[s]];
                cursor[s] += 1;
                v
            })
            .collect();
        self.done = !next_permutation(&mut self.choice);
        Some(SignedPermutation::from_window_unchecked(window))
    }
}

/// Rearranges into the next lexicographic permutation; false at the last one.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs
        .iter()
        .rposition(|&x| x > xs[i])
        .expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

pub fn expand_shuffles(block: &ShuffleBlock) -> Shuffles<'_> {
    let choice = block
        .sequences
        .iter()
        .enumerate()
        .flat_map(|(i, s)| core::iter::repeat_n(i, s.len()))
        .collect();
    Shuffles {
        block,
        choice,
        done: false,
    }
}

/// All admissible `r` vectors, `m_i <= r_i <= m_{i+1}`, in lexicographic order.
fn r_vectors(set: &DescentSet) -> Vec<Vec<u32>> {
    let t = set.len();
    let lo: Vec<u32> = (1..=t).map(|i| set.m(i) as u32).collect();
    let hi: Vec<u32> = (1..=t).map(|i| set.m(i + 1) as u32).collect();
    let mut out = Vec::new();
    let mut r = lo.clone();
    loop {
        out.push(r.clone());
        let Some(k) = (0..t).rev().find(|&k| r[k] < hi[k]) else {
            return out;
        };
        r[k] += 1;
        r[k + 1..].copy_from_slice(&lo[k + 1..]);
    }
}

fn ascending(lo: u32, hi: u32) -> Vec<i32> {
    (lo as i32..=hi as i32).collect()
}

/// `(-r, ..., -lo)`, increasing.
fn negated_run(lo: u32, r: u32) -> Vec<i32> {
    (lo as i32..=r as i32).rev().map(|v| -v).collect()
}

/// The pairs `(-r_i..-(m_i+1))`, `(r_i+1..m_{i+1})` for `i >= from` (1-based).
fn tail_sequences(set: &DescentSet, r: &[u32], from: usize) -> Vec<Vec<i32>> {
    let mut seqs = Vec::new();
    for i in from..=set.len() {
        let m = set.m(i) as u32;
        seqs.push(negated_run(m + 1, r[i - 1]));
        seqs.push(ascending(r[i - 1] + 1, set.m(i + 1) as u32));
    }
    seqs
}

fn parity_sum(set: &DescentSet, r: &[u32], from: usize) -> u32 {
    (from..=set.len()).map(|i| r[i - 1] - set.m(i) as u32).sum()
}

fn b_sequences(set: &DescentSet, r: &[u32]) -> Vec<Vec<i32>> {
    let mut seqs = vec![ascending(1, set.m(1) as u32)];
    seqs.extend(tail_sequences(set, r, 1));
    seqs
}

/// Shuffle blocks of `B(M)`, one per `r` vector.
pub fn descent_class_blocks_b(set: &DescentSet) -> Vec<(Vec<u32>, ShuffleBlock)> {
    r_vectors(set)
        .into_iter()
        .map(|r| {
            let block = ShuffleBlock::new(b_sequences(set, &r), Parity::None)
                .expect("class sequences partition [n]");
            (r, block)
        })
        .collect()
}

/// Which of the six type-D block families produced a block.
///
/// `case` is 1 when `0 ∈ M`, 2 when `0, 1 ∉ M`, 3 when `0 ∉ M, 1 ∈ M`;
/// `column` numbers the families within a case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseTag {
    pub case: u8,
    pub column: u8,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.case, self.column)
    }
}

/// Shuffle blocks of `D(M)`, with the family and `r` vector of each.
pub fn descent_class_blocks_d(set: &DescentSet) -> Vec<(CaseTag, Vec<u32>, ShuffleBlock)> {
    let tag = |case, column| CaseTag { case, column };
    let mut out = Vec::new();
    let mut push = |t: CaseTag, r: &[u32], seqs: Vec<Vec<i32>>, parity: Parity| {
        let block = ShuffleBlock::new(seqs, parity).expect("class sequences partition [n]");
        out.push((t, r.to_vec(), block));
    };
    for r in r_vectors(set) {
        if set.contains(0) {
            if parity_sum(set, &r, 1).is_multiple_of(2) {
                push(tag(1, 1), &r, b_sequences(set, &r), Parity::Even);
            }
        } else if !set.contains(1) {
            let m1 = set.m(1) as u32;
            if parity_sum(set, &r, 1).is_multiple_of(2) {
                push(tag(2, 1), &r, b_sequences(set, &r), Parity::Even);
            } else {
                let mut seqs = vec![[-1].into_iter().chain(2..=m1 as i32).collect()];
                seqs.extend(tail_sequences(set, &r, 1));
                push(tag(2, 2), &r, seqs, Parity::Odd);
            }
        } else {
            // m_1 = 1
            let m2 = set.m(2) as u32;
            if r[0] == 1 {
                if parity_sum(set, &r, 2).is_multiple_of(2) {
                    let mut seqs = vec![vec![1], ascending(2, m2)];
                    seqs.extend(tail_sequences(set, &r, 2));
                    push(tag(3, 1), &r, seqs, Parity::Even);
                } else {
                    let mut seqs = vec![[-1].into_iter().chain(2..=m2 as i32).collect()];
                    seqs.extend(tail_sequences(set, &r, 2));
                    push(tag(3, 2), &r, seqs, Parity::Odd);
                }
            } else if parity_sum(set, &r, 1).is_multiple_of(2) {
                let mut head = negated_run(2, r[0]);
                head.push(1);
                let mut seqs = vec![head, ascending(r[0] + 1, m2)];
                seqs.extend(tail_sequences(set, &r, 2));
                push(tag(3, 3), &r, seqs, Parity::Even);
            }
        }
    }
    out
}

/// The class built from its blocks, in emission order.
///
/// Type A uses the blocks `(1..m_1), (m_1+1..m_2), ..., (m_t+1..n)`.
pub fn construct_class(group: Group, set: &DescentSet) -> Result<Vec<SignedPermutation>> {
    let blocks: Vec<ShuffleBlock> = match group {
        Group::A => {
            if set.contains(0) {
                return Err(Error::ZeroInTypeA);
            }
            let seqs = (1..=set.len() + 1)
                .map(|k| {
                    let lo = if k == 1 { 1 } else { set.m(k - 1) as u32 + 1 };
                    ascending(lo, set.m(k) as u32)
                })
                .collect();
            vec![ShuffleBlock::new(seqs, Parity::None)?]
        }
        Group::B => descent_class_blocks_b(set)
            .into_iter()
            .map(|(_, b)| b)
            .collect(),
        Group::D => descent_class_blocks_d(set)
            .into_iter()
            .map(|(_, _, b)| b)
            .collect(),
    };
    Ok(blocks.iter().flat_map(expand_shuffles).collect())
}

/// Negates the first window entry, i.e. right multiplication by `s_0^B`.
pub fn bar_map(p: &SignedPermutation) -> SignedPermutation {
    let mut w = p.window().to_vec();
    w[0] = -w[0];
    SignedPermutation::from_window_unchecked(w)
}

/// Identity on `D_n`; otherwise left multiplication by `s_0^B`, which
/// negates the entry of absolute value 1. Requires `0, 1 ∉ M`; membership of
/// `p` in `B(M)` is the caller's concern (the map is defined on all of `B_n`).
pub fn phi_map(p: &SignedPermutation, set: &DescentSet) -> Result<SignedPermutation> {
    if set.contains(0) || set.contains(1) {
        return Err(Error::Precondition("phi needs 0 and 1 outside M"));
    }
    if set.rank() != p.rank() {
        return Err(Error::RankMismatch {
            left: p.rank(),
            right: set.rank(),
        });
    }
    if p.is_even_signed() {
        return Ok(p.clone());
    }
    let w = p
        .window()
        .iter()
        .map(|&v| if v.abs() == 1 { -v } else { v })
        .collect();
    Ok(SignedPermutation::from_window_unchecked(w))
}

fn locate(seqs: &[Vec<i32>], pred: impl Fn(i32) -> bool) -> Option<(usize, usize)> {
    seqs.iter()
        .enumerate()
        .find_map(|(s, seq)| seq.iter().position(|&v| pred(v)).map(|k| (s, k)))
}

/// One step `D_{1..i-1}(M) -> D_{1..i}(M)` on a block's sequences.
fn chain_step(seqs: &mut [Vec<i32>], i: i32) -> Result<()> {
    let (s1, k1) =
        locate(seqs, |v| v == 1).ok_or_else(|| Error::InvalidBlock("1 missing".into()))?;
    let (si, ki) = locate(seqs, |v| v.abs() == i).expect("every value occurs");
    if s1 == si {
        seqs[s1].swap(k1, ki);
    } else {
        if seqs[si][ki] != i {
            return Err(Error::InvalidBlock(alloc::format!(
                "chain step {i}: 1 and -{i} in different sequences"
            )));
        }
        seqs[si][ki] = 1;
        seqs[s1][k1] = -i;
    }
    Ok(())
}

/// Blocks of the piece `D_{1..i}(M)` of `B(M)`, for `0 ∉ M`, `1 ∈ M` and `1 <= i <= m_2`.
///
/// `D_1(M)` turns `-1` into `1` in every `D(M)` block; each later step
/// swaps `1` with `±i` inside a sequence, or, when they sit in different
/// sequences, writes `1` over `i` and `-i` over `1`.
pub fn chain_blocks(set: &DescentSet, i: usize) -> Result<Vec<ShuffleBlock>> {
    if set.contains(0) || !set.contains(1) {
        return Err(Error::Precondition("chain splitting needs 0 ∉ M and 1 ∈ M"));
    }
    if i < 1 || i > set.m(2) {
        return Err(Error::Precondition("chain index must lie in [1, m_2]"));
    }
    descent_class_blocks_d(set)
        .into_iter()
        .map(|(_, _, block)| {
            let mut seqs: Vec<Vec<i32>> = block
                .sequences()
                .iter()
                .map(|s| s.iter().map(|&v| if v == -1 { 1 } else { v }).collect())
                .collect();
            for step in 2..=i as i32 {
                chain_step(&mut seqs, step)?;
            }
            ShuffleBlock::new(seqs, block.parity())
        })
        .collect()
}
