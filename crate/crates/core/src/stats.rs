//! Per-element statistics: inversions, descents, the negative statistics and
//! the Coxeter lengths of type B and D.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{DescentSet, SignedPermutation};

/// Every statistic of one signed permutation.
///
/// `ndes_multiset` and `ddes_multiset` are sorted and keep repeated values,
/// so `nmaj` and `dmaj` are their sums with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatisticBundle {
    pub inv: u32,
    pub maj: u32,
    pub des: u32,
    pub n1: u32,
    pub n2: u32,
    pub len_b: u32,
    pub len_d: u32,
    pub nmaj: u32,
    pub ndes: u32,
    pub dmaj: u32,
    pub ddes: u32,
    /// `-1` when `-1` occurs in the window (equivalently `1` is not a value), else `0`.
    pub epsilon: i32,
    pub des_set: DescentSet,
    pub des_b_set: DescentSet,
    pub des_d_set: DescentSet,
    pub ndes_multiset: Vec<u32>,
    pub ddes_multiset: Vec<u32>,
}

pub fn inv(p: &SignedPermutation) -> u32 {
    let w = p.window();
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// Unordered position pairs whose values sum to a negative number.
pub fn n2(p: &SignedPermutation) -> u32 {
    let w = p.window();
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] + w[j] < 0 {
                count += 1;
            }
        }
    }
    count
}

/// Bitmask of `Des`: bit `i` set for `i ∈ [n-1]` with `β(i) > β(i+1)`.
pub fn des_mask(p: &SignedPermutation) -> u64 {
    let w = p.window();
    (1..w.len())
        .filter(|&i| w[i - 1] > w[i])
        .fold(0, |acc, i| acc | 1 << i)
}

/// `Des_B`, using `β(0) = 0`.
pub fn des_b_mask(p: &SignedPermutation) -> u64 {
    des_mask(p) | (p.window()[0] < 0) as u64
}

/// `Des_D`, using `γ(0) = -γ(2)`. Empty at rank 1.
pub fn des_d_mask(p: &SignedPermutation) -> u64 {
    let w = p.window();
    let zero = w.len() >= 2 && -w[1] > w[0];
    des_mask(p) | zero as u64
}

pub fn maj(p: &SignedPermutation) -> u32 {
    let mask = des_mask(p);
    (0..64).filter(|i| mask >> i & 1 == 1).sum()
}

/// Flag-major index, `2·maj + N1`.
pub fn fmaj(p: &SignedPermutation) -> u32 {
    2 * maj(p) + p.negatives() as u32
}

pub fn statistics(p: &SignedPermutation) -> StatisticBundle {
    let n = p.rank();
    let w = p.window();
    let des_set = DescentSet::from_mask(n, des_mask(p));
    let des_b_set = DescentSet::from_mask(n, des_b_mask(p));
    let des_d_set = DescentSet::from_mask(n, des_d_mask(p));

    let negative_values = || w.iter().filter(|&&v| v < 0).map(|&v| v.unsigned_abs());

    let mut ndes_multiset: Vec<u32> = des_set.members().to_vec();
    ndes_multiset.extend(negative_values());
    ndes_multiset.sort_unstable();

    let mut ddes_multiset: Vec<u32> = des_set.members().to_vec();
    ddes_multiset.extend(negative_values().map(|a| a - 1).filter(|&d| d != 0));
    ddes_multiset.sort_unstable();

    let inv = inv(p);
    let n1 = p.negatives() as u32;
    let n2 = n2(p);
    let maj = des_set.members().iter().sum();
    StatisticBundle {
        inv,
        maj,
        des: des_set.len() as u32,
        n1,
        n2,
        len_b: inv + n1 + n2,
        len_d: inv + n2,
        nmaj: ndes_multiset.iter().sum(),
        ndes: ndes_multiset.len() as u32,
        dmaj: ddes_multiset.iter().sum(),
        ddes: ddes_multiset.len() as u32,
        epsilon: if w.contains(&-1) { -1 } else { 0 },
        des_set,
        des_b_set,
        des_d_set,
        ndes_multiset,
        ddes_multiset,
    }
}

/// A statistic that can be attached to a variable of a generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatKey {
    Inv,
    Maj,
    Des,
    LenB,
    LenD,
    Nmaj,
    Ndes,
    Dmaj,
    Ddes,
    Fmaj,
    N1,
    N2,
}

impl StatKey {
    pub const ALL: [StatKey; 12] = [
        StatKey::Inv,
        StatKey::Maj,
        StatKey::Des,
        StatKey::LenB,
        StatKey::LenD,
        StatKey::Nmaj,
        StatKey::Ndes,
        StatKey::Dmaj,
        StatKey::Ddes,
        StatKey::Fmaj,
        StatKey::N1,
        StatKey::N2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatKey::Inv => "inv",
            StatKey::Maj => "maj",
            StatKey::Des => "des",
            StatKey::LenB => "len_B",
            StatKey::LenD => "len_D",
            StatKey::Nmaj => "nmaj",
            StatKey::Ndes => "ndes",
            StatKey::Dmaj => "dmaj",
            StatKey::Ddes => "ddes",
            StatKey::Fmaj => "fmaj",
            StatKey::N1 => "n1",
            StatKey::N2 => "n2",
        }
    }

    pub fn of(self, b: &StatisticBundle) -> u32 {
        match self {
            StatKey::Inv => b.inv,
            StatKey::Maj => b.maj,
            StatKey::Des => b.des,
            StatKey::LenB => b.len_b,
            StatKey::LenD => b.len_d,
            StatKey::Nmaj => b.nmaj,
            StatKey::Ndes => b.ndes,
            StatKey::Dmaj => b.dmaj,
            StatKey::Ddes => b.ddes,
            StatKey::Fmaj => 2 * b.maj + b.n1,
            StatKey::N1 => b.n1,
            StatKey::N2 => b.n2,
        }
    }
}

impl fmt::Display for StatKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatKey::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown statistic `{s}`")))
    }
}
