//! Generating functions of statistics over element sets, and the product
//! formulas they are compared against.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::borrow::Borrow;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{DescentSet, SignedPermutation};
use crate::qanalog::{q_binomial, q_factorial, q_int, q_multinomial};
use crate::series::{Caps, Monomial, Series, Var};
use crate::stats::{statistics, StatKey};

/// `Σ_p Π_k var_k^{stat_k(p)}`, exactly.
///
/// A statistic value beyond the cap of its variable is an error rather
/// than a silent truncation. Pass [`Caps::unbounded`] for plain polynomials.
pub fn gf<I>(elements: I, keys: &[(StatKey, Var)], caps: Caps) -> Result<Series>
where
    I: IntoIterator,
    I::Item: Borrow<SignedPermutation>,
{
    let mut counts: BTreeMap<Monomial, u64> = BTreeMap::new();
    for p in elements {
        let bundle = statistics(p.borrow());
        let mut m = Monomial::ONE;
        for &(key, var) in keys {
            let e = key.of(&bundle) + m.exponent(var);
            if let Some(cap) = caps.get(var) {
                if e > cap {
                    return Err(Error::CapOverflow {
                        var,
                        exponent: e,
                        cap,
                    });
                }
            }
            m = m.with(var, e);
        }
        *counts.entry(m).or_default() += 1;
    }
    Ok(Series::from_terms(caps, counts))
}

/// Single-statistic generating function in `q`, uncapped.
pub fn gf_q<I>(elements: I, key: StatKey) -> Series
where
    I: IntoIterator,
    I::Item: Borrow<SignedPermutation>,
{
    gf(elements, &[(key, Var::Q)], Caps::unbounded()).expect("uncapped")
}

fn multinomial_of(set: &DescentSet) -> Series {
    let parts: Vec<u32> = set.parts().into_iter().map(|p| p as u32).collect();
    q_multinomial(set.rank() as u32, &parts).expect("parts sum to n")
}

/// `Π_{i=lo}^{hi} (1 + q^i)`; empty when `lo > hi`.
fn one_plus_q_product(lo: usize, hi: usize) -> Series {
    let unbounded = Caps::unbounded();
    (lo..=hi).fold(Series::one(unbounded), |acc, i| {
        let f = Series::one(unbounded)
            + Series::monomial(
                BigInt::from(1),
                Monomial::ONE.with(Var::Q, i as u32),
                unbounded,
            );
        acc * f
    })
}

/// The q-multinomial `[n; m_1, m_2 - m_1, ..., n - m_t]_q` for `M ⊆ [n-1]`.
pub fn closed_form_a(set: &DescentSet) -> Result<Series> {
    if set.contains(0) {
        return Err(Error::ZeroInTypeA);
    }
    Ok(multinomial_of(set))
}

/// q-multinomial times `Π_{i=m_1+1}^{n} (1 + q^i)`; `m_1 = n` for empty `M`.
pub fn closed_form_b(set: &DescentSet) -> Series {
    multinomial_of(set) * one_plus_q_product(set.m(1) + 1, set.rank())
}

/// q-multinomial times `Π_{i=m_1}^{n-1} (1 + q^i)`: the type-D length over `B(M)`.
pub fn closed_form_b_dlen(set: &DescentSet) -> Series {
    multinomial_of(set) * one_plus_q_product(set.m(1), set.rank() - 1)
}

/// The same sum as [`closed_form_b_dlen`], evaluated term by term over the `r` vectors:
///
/// `Σ_r [n; m_1, r_1 - m_1, m_2 - r_1, ..., n - r_t]_q · q^{Σ C(r_i-m_i+1, 2) + (r_i-m_i)(m_i-1)}`.
pub fn b_dlen_by_r_sum(set: &DescentSet) -> Series {
    let t = set.len();
    let n = set.rank() as u32;
    let mut acc = Series::zero(Caps::unbounded());
    let mut r: Vec<u32> = (1..=t).map(|i| set.m(i) as u32).collect();
    loop {
        let mut parts = Vec::with_capacity(2 * t + 1);
        parts.push(set.m(1) as u32);
        let mut exponent: i64 = 0;
        for i in 1..=t {
            let (m, next, ri) = (set.m(i) as u32, set.m(i + 1) as u32, r[i - 1]);
            parts.push(ri - m);
            parts.push(next - ri);
            let k = (ri - m) as i64;
            exponent += k * (k + 1) / 2 + k * (m as i64 - 1);
        }
        debug_assert!(exponent >= 0);
        let term = q_multinomial(n, &parts).expect("parts sum to n");
        acc = &acc + &term.shift(Monomial::ONE.with(Var::Q, exponent as u32));

        let Some(k) = (0..t).rev().find(|&k| r[k] < set.m(k + 2) as u32) else {
            return acc;
        };
        r[k] += 1;
        for (j, rj) in r.iter_mut().enumerate().skip(k + 1) {
            *rj = set.m(j + 1) as u32;
        }
    }
}

/// Type-D length generating function of `D(M)` in its three cases.
///
/// The third case divides by `[m_2]_q` exactly; a remainder is an error.
pub fn closed_form_d(set: &DescentSet) -> Result<Series> {
    let n = set.rank();
    let mult = multinomial_of(set);
    if set.contains(0) {
        Ok(mult * one_plus_q_product(1, n - 1))
    } else if !set.contains(1) {
        Ok(mult * one_plus_q_product(set.m(1), n - 1))
    } else {
        let numerator = mult * one_plus_q_product(1, n - 1);
        numerator.div_exact(&q_int(set.m(2) as u32), Var::Q)
    }
}

/// Product formulas for the length generating functions:
/// `[n]_q!`, `Π [2i]_q` and `[n]_q Π_{i<n} [2i]_q`.
pub fn poincare_oracle(group: Group, n: usize) -> Series {
    let n = n as u32;
    match group {
        Group::A => q_factorial(n),
        Group::B => (1..=n).fold(Series::one(Caps::unbounded()), |acc, i| acc * q_int(2 * i)),
        Group::D => (1..n).fold(q_int(n), |acc, i| acc * q_int(2 * i)),
    }
}

/// `Σ_m [n, m]_q q^{C(m+1, 2)} x^m` with `x` stored in `x_var`.
pub fn q_binomial_sum(n: u32, x_var: Var) -> Series {
    (0..=n).fold(Series::zero(Caps::unbounded()), |acc, m| {
        let shift = Monomial::ONE.with(Var::Q, m * (m + 1) / 2).with(x_var, m);
        acc + q_binomial(n, m).shift(shift)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{descent_class_filter, DescentClassSpec, Mode};
    use crate::group::iter_group;

    fn poly_q(c: &[i64]) -> Series {
        Series::univariate(Var::Q, c, Caps::unbounded())
    }

    fn set(n: usize, s: &str) -> DescentSet {
        DescentSet::parse(n, s).unwrap()
    }

    #[test]
    fn gf_examples() {
        assert_eq!(
            gf_q(iter_group(Group::A, 3), StatKey::Maj),
            poly_q(&[1, 2, 2, 1])
        );
        assert_eq!(
            gf_q([SignedPermutation::identity(3)], StatKey::Nmaj),
            poly_q(&[1])
        );
        assert_eq!(
            gf_q(iter_group(Group::B, 2), StatKey::LenB),
            poly_q(&[1, 2, 2, 2, 1])
        );
    }

    #[test]
    fn gf_cap_overflow_is_an_error() {
        let caps = Caps::unbounded().with(Var::Q, 3);
        let err = gf(iter_group(Group::B, 2), &[(StatKey::LenB, Var::Q)], caps).unwrap_err();
        assert!(matches!(
            err,
            Error::CapOverflow {
                var: Var::Q,
                cap: 3,
                ..
            }
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_a(&set(4, "")).unwrap(), poly_q(&[1]));
        assert_eq!(closed_form_a(&set(3, "1")).unwrap(), poly_q(&[1, 1, 1]));
        assert!(closed_form_a(&set(3, "0")).is_err());
        assert_eq!(
            closed_form_b(&set(2, "0")),
            poly_q(&[1, 1]) * poly_q(&[1, 0, 1])
        );
        assert_eq!(closed_form_b(&set(5, "")), poly_q(&[1]));
        assert_eq!(
            closed_form_b(&set(3, "0,1,2")),
            poincare_oracle(Group::B, 3)
        );
        assert_eq!(closed_form_b_dlen(&set(2, "0")), poly_q(&[2, 2]));
        assert_eq!(closed_form_b_dlen(&set(4, "")), poly_q(&[1]));
        assert_eq!(closed_form_d(&set(2, "0")).unwrap(), poly_q(&[1, 1]));
        assert_eq!(closed_form_d(&set(4, "")).unwrap(), poly_q(&[1]));
    }

    #[test]
    fn closed_form_d_case_three() {
        let m = set(4, "1,3");
        let num = q_multinomial(4, &[1, 2, 1]).unwrap()
            * poly_q(&[1, 1])
            * poly_q(&[1, 0, 1])
            * poly_q(&[1, 0, 0, 1]);
        assert_eq!(closed_form_d(&m).unwrap() * q_int(3), num);
        let class = descent_class_filter(
            &DescentClassSpec::new(Group::D, m.clone(), Mode::Subset).unwrap(),
        );
        assert_eq!(gf_q(&class, StatKey::LenD), closed_form_d(&m).unwrap());
    }

    #[test]
    fn r_sum_route_agrees_with_product() {
        for n in 1..=6 {
            for m in DescentSet::all(n) {
                assert_eq!(b_dlen_by_r_sum(&m), closed_form_b_dlen(&m), "n={n} M={m}");
            }
        }
    }

    #[test]
    fn poincare_against_enumeration() {
        assert_eq!(
            poincare_oracle(Group::A, 3),
            gf_q(iter_group(Group::A, 3), StatKey::Inv)
        );
        assert_eq!(poincare_oracle(Group::B, 2), q_int(2) * q_int(4));
        assert_eq!(poincare_oracle(Group::D, 2), poly_q(&[1, 2, 1]));
        for n in 1..=5 {
            assert_eq!(
                poincare_oracle(Group::B, n),
                gf_q(iter_group(Group::B, n), StatKey::LenB)
            );
            assert_eq!(
                poincare_oracle(Group::D, n),
                gf_q(iter_group(Group::D, n), StatKey::LenD)
            );
        }
    }
}
