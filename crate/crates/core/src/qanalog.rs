//! q-analogs and q-series building blocks.
//!
//! Polynomials returned without a `caps` argument are exact and uncapped.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::{Caps, Monomial, Series, Term, Var};

fn q_pow(k: u32) -> Monomial {
    Monomial::ONE.with(Var::Q, k)
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u32) -> Series {
    Series::from_terms(Caps::unbounded(), (0..n).map(|i| (q_pow(i), 1)))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> Series {
    (1..=n).fold(Series::one(Caps::unbounded()), |acc, i| &acc * &q_int(i))
}

/// Gaussian binomial, via `[n, k] = [n-1, k-1] + q^k [n-1, k]`. Zero when `m > n`.
pub fn q_binomial(n: u32, m: u32) -> Series {
    if m > n {
        return Series::zero(Caps::unbounded());
    }
    // row[k] holds [i, k] as a coefficient vector in q.
    let mut row: Vec<Vec<BigInt>> = alloc::vec![alloc::vec![BigInt::one()]];
    for i in 1..=n as usize {
        let mut next = Vec::with_capacity(i + 1);
        for k in 0..=i {
            let deg = k * (i - k);
            let mut c = alloc::vec![BigInt::default(); deg + 1];
            if k >= 1 {
                for (e, x) in row[k - 1].iter().enumerate() {
                    c[e] += x;
                }
            }
            if k < i {
                for (e, x) in row[k].iter().enumerate() {
                    c[e + k] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    Series::from_terms(
        Caps::unbounded(),
        row.swap_remove(m as usize)
            .into_iter()
            .enumerate()
            .map(|(e, c)| (q_pow(e as u32), c)),
    )
}

/// `[n; a_1, ..., a_k]_q` as a product of q-binomials, so no division is needed.
pub fn q_multinomial(n: u32, parts: &[u32]) -> Result<Series> {
    let total: u32 = parts.iter().sum();
    if total != n {
        return Err(Error::PartsSum {
            got: total as usize,
            expected: n as usize,
        });
    }
    let mut acc = Series::one(Caps::unbounded());
    let mut running = 0;
    for &a in parts {
        running += a;
        acc = &acc * &q_binomial(running, a);
    }
    Ok(acc)
}

/// `(a; base)_n = (1 - a)(1 - a·base)...(1 - a·base^(n-1))`.
pub fn pochhammer(a: Term, base: Monomial, n: u32, caps: Caps) -> Series {
    let one = Series::one(caps);
    let mut acc = one.clone();
    for i in 0..n {
        let factor =
            &one - &Series::monomial(BigInt::from(a.coeff), a.monomial * base.pow(i), caps);
        acc = &acc * &factor;
    }
    acc
}

/// Range of a double Pochhammer index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

/// `(a; t, q)_{r,s} = Π_{1<=i<=r, 1<=j<=s} (1 - a t^(i-1) q^(j-1))`.
///
/// An infinite bound needs a cap on the matching variable; factors whose
/// monomial already lies beyond the caps are congruent to 1 and skipped.
pub fn double_pochhammer(a: Term, r: Bound, s: Bound, caps: Caps) -> Result<Series> {
    let limit = |b: Bound, v: Var| -> Result<u32> {
        match b {
            Bound::Finite(k) => Ok(k),
            Bound::Infinite => caps.get(v).map(|c| c + 1).ok_or(Error::Uncapped(v)),
        }
    };
    let rows = limit(r, Var::T)?;
    let cols = limit(s, Var::Q)?;
    let one = Series::one(caps);
    let mut acc = one.clone();
    for i in 0..rows {
        for j in 0..cols {
            let m = a.monomial * Monomial::of(&[(Var::T, i), (Var::Q, j)]);
            if !caps.admits(&m) {
                continue;
            }
            acc = &acc * &(&one - &Series::monomial(BigInt::from(a.coeff), m, caps));
        }
    }
    Ok(acc)
}

/// `e[arg]_q = Σ_n arg^n / [n]_q!`, summed up to the `u` cap.
pub fn q_exponential(arg: Monomial, caps: Caps) -> Result<Series> {
    let du = arg.exponent(Var::U);
    if du == 0 {
        return Err(Error::InvalidArgument(
            "q-exponential argument must have positive degree in u".into(),
        ));
    }
    let ucap = caps.get(Var::U).ok_or(Error::Uncapped(Var::U))?;
    caps.get(Var::Q).ok_or(Error::Uncapped(Var::Q))?;
    let mut acc = Series::zero(caps);
    for n in 0..=ucap / du {
        let denom = q_factorial(n).truncate(caps).invert()?;
        acc = &acc + &denom.shift(arg.pow(n));
    }
    Ok(acc)
}
