//! Enumeration of `S_n`, `B_n`, `D_n` and of their increasing quotients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::SignedPermutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// The symmetric group `S_n`, as unsigned windows.
    A,
    B,
    D,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::A => "S_n",
            Group::B => "B_n",
            Group::D => "D_n",
        }
    }

    pub fn contains(self, p: &SignedPermutation) -> bool {
        match self {
            Group::A => p.is_unsigned(),
            Group::B => true,
            Group::D => p.is_even_signed(),
        }
    }

    /// `n!`, `2^n n!` and `2^(n-1) n!`.
    pub fn order(self, n: usize) -> u64 {
        let fact: u64 = (1..=n as u64).product();
        match self {
            Group::A => fact,
            Group::B => fact << n,
            Group::D => fact << (n.max(1) - 1),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::A => "A",
            Group::B => "B",
            Group::D => "D",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" | "S" => Ok(Group::A),
            "B" | "b" => Ok(Group::B),
            "D" | "d" => Ok(Group::D),
            other => Err(Error::InvalidArgument(alloc::format!(
                "unknown group `{other}` (expected A, B or D)"
            ))),
        }
    }
}

/// Lazy lexicographic enumeration of a group's windows.
///
/// Memory stays `O(n)` whatever the group order.
#[derive(Clone, Debug)]
pub struct GroupIter {
    group: Group,
    window: Vec<i32>,
    used: Vec<bool>,
    state: IterState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl GroupIter {
    fn lowest(&self) -> i32 {
        match self.group {
            Group::A => 1,
            Group::B | Group::D => -(self.window.len() as i32),
        }
    }

    /// Smallest admissible value `> after` whose absolute value is free.
    fn next_free(&self, after: i32) -> Option<i32> {
        let n = self.window.len() as i32;
        (after + 1..=n).find(|&v| v != 0 && !self.used[v.unsigned_abs() as usize])
    }

    fn fill_from(&mut self, pos: usize) {
        for i in pos..self.window.len() {
            let v = self
                .next_free(self.lowest() - 1)
                .expect("a free value always remains");
            self.window[i] = v;
            self.used[v.unsigned_abs() as usize] = true;
        }
    }

    /// Advances to the next window in lexicographic order over all of `B_n` (or `S_n`).
    fn advance(&mut self) -> bool {
        for pos in (0..self.window.len()).rev() {
            let cur = self.window[pos];
            self.used[cur.unsigned_abs() as usize] = false;
            if let Some(v) = self.next_free(cur) {
                self.window[pos] = v;
                self.used[v.unsigned_abs() as usize] = true;
                self.fill_from(pos + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for GroupIter {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        loop {
            match self.state {
                IterState::Done => return None,
                IterState::Fresh => {
                    self.fill_from(0);
                    self.state = IterState::Running;
                }
                IterState::Running => {
                    if !self.advance() {
                        self.state = IterState::Done;
                        return None;
                    }
                }
            }
            if self.group != Group::D || self.window.iter().filter(|&&v| v < 0).count() % 2 == 0 {
                return Some(SignedPermutation::from_window_unchecked(
                    self.window.clone(),
                ));
            }
        }
    }
}

/// Every element of the group of rank `n`, once, in lexicographic window order.
pub fn iter_group(group: Group, n: usize) -> GroupIter {
    assert!(n >= 1, "rank must be positive");
    GroupIter {
        group,
        window: vec![0; n],
        used: vec![false; n + 1],
        state: IterState::Fresh,
    }
}

/// Elements with increasing windows: `B^J` (2^n of them) or `D^J` (2^(n-1)).
pub fn quotient_increasing(
    group: Group,
    n: usize,
) -> Result<alloc::vec::IntoIter<SignedPermutation>> {
    if group == Group::A {
        return Err(Error::InvalidArgument(
            "increasing quotients are defined for B and D".into(),
        ));
    }
    let mut out: Vec<SignedPermutation> = (0..1u64 << n)
        .filter(|mask| group == Group::B || mask.count_ones() % 2 == 0)
        .map(|mask| {
            let mut w: Vec<i32> = (1..=n as i32)
                .map(|i| if mask >> (i - 1) & 1 == 1 { -i } else { i })
                .collect();
            w.sort_unstable();
            SignedPermutation::from_window_unchecked(w)
        })
        .collect();
    out.sort_unstable();
    Ok(out.into_iter())
}

/// Splits `p = u ∘ σ` with `u` increasing and `σ ∈ S_n`.
///
/// `u` holds the sorted window of `p`, and `σ(i)` is the rank of `p(i)` in it.
pub fn factor_quotient(
    p: &SignedPermutation,
    group: Group,
) -> Result<(SignedPermutation, SignedPermutation)> {
    if !group.contains(p) {
        return Err(Error::NotInGroup(alloc::format!("{p}"), group.name()));
    }
    let mut sorted = p.window().to_vec();
    sorted.sort_unstable();
    let sigma: Vec<i32> = p
        .window()
        .iter()
        .map(|v| sorted.binary_search(v).expect("value present") as i32 + 1)
        .collect();
    Ok((
        SignedPermutation::from_window_unchecked(sorted),
        SignedPermutation::from_window_unchecked(sigma),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::statistics;

    fn w(text: &str) -> SignedPermutation {
        text.parse().unwrap()
    }

    #[test]
    fn orders_and_lex_order() {
        for n in 1..=5 {
            for g in [Group::A, Group::B, Group::D] {
                let all: Vec<_> = iter_group(g, n).collect();
                assert_eq!(all.len() as u64, g.order(n), "{g} n={n}");
                assert!(
                    all.windows(2).all(|x| x[0] < x[1]),
                    "{g} n={n} not strictly sorted"
                );
                assert!(all.iter().all(|p| g.contains(p)));
            }
        }
    }

    #[test]
    fn small_groups() {
        assert_eq!(iter_group(Group::B, 2).count(), 8);
        let d2: Vec<_> = iter_group(Group::D, 2).collect();
        assert_eq!(d2, [w("[-2,-1]"), w("[-1,-2]"), w("[1,2]"), w("[2,1]")]);
        let a3: Vec<_> = iter_group(Group::A, 3).collect();
        assert_eq!(a3.len(), 6);
        assert!(a3.iter().all(SignedPermutation::is_unsigned));
        assert_eq!(
            iter_group(Group::B, 1).collect::<Vec<_>>(),
            [w("[-1]"), w("[1]")]
        );
    }

    #[test]
    fn quotients() {
        let bj: Vec<_> = quotient_increasing(Group::B, 2).unwrap().collect();
        assert_eq!(bj, [w("[-2,-1]"), w("[-2,1]"), w("[-1,2]"), w("[1,2]")]);
        for n in 1..=8 {
            let b: Vec<_> = quotient_increasing(Group::B, n).unwrap().collect();
            let d: Vec<_> = quotient_increasing(Group::D, n).unwrap().collect();
            assert_eq!(b.len(), 1 << n);
            assert_eq!(d.len(), 1 << (n - 1));
            assert!(b.iter().all(|u| statistics(u).inv == 0));
        }
        assert!(quotient_increasing(Group::A, 3).is_err());
    }

    #[test]
    fn factor_example() {
        let p = w("[-3,1,-6,2,-4,-5]");
        let (u, s) = factor_quotient(&p, Group::B).unwrap();
        assert_eq!(u, w("[-6,-5,-4,-3,1,2]"));
        assert_eq!(s, w("[4,5,1,6,3,2]"));
        assert_eq!(u.compose(&s).unwrap(), p);
        let id = SignedPermutation::identity(4);
        assert_eq!(factor_quotient(&id, Group::D).unwrap(), (id.clone(), id));
        assert!(factor_quotient(&w("[-1,2]"), Group::D).is_err());
    }
}
