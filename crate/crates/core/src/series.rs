//! Sparse multivariate power series in `u, t, q, p` over big integers,
//! truncated by per-variable degree caps.
//!
//! A series with caps `c` lives in `Z[u,t,q,p] / (v^(c_v + 1))`. A variable
//! without a cap is unbounded, which is only meaningful for genuine
//! polynomials; operations that would produce an infinite expansion in an
//! uncapped variable fail with [`Error::Uncapped`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    T,
    Q,
    P,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::U, Var::T, Var::Q, Var::P];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::U => 'u',
            Var::T => 't',
            Var::Q => 'q',
            Var::P => 'p',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "u" => Ok(Var::U),
            "t" => Ok(Var::T),
            "q" => Ok(Var::Q),
            "p" | "x" => Ok(Var::P),
            other => Err(Error::InvalidArgument(alloc::format!(
                "unknown variable `{other}`"
            ))),
        }
    }
}

/// Exponent vector indexed by [`Var`]. Ordered lexicographically in `u, t, q, p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(exponents: [u32; 4]) -> Self {
        Self(exponents)
    }

    pub fn var(v: Var) -> Self {
        Self::ONE.with(v, 1)
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables add up.
    pub fn of(factors: &[(Var, u32)]) -> Self {
        let mut m = Self::ONE;
        for &(v, e) in factors {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn with(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn pow(self, k: u32) -> Self {
        Self(self.0.map(|e| e * k))
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        let mut out = [0; 4];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0)) {
            *o = a.checked_sub(b)?;
        }
        Some(Self(out))
    }

    pub fn swap(self, a: Var, b: Var) -> Self {
        let mut e = self.0;
        e.swap(a.index(), b.index());
        Self(e)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial(core::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Per-variable degree caps; `None` is unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Caps([Option<u32>; 4]);

impl Caps {
    pub fn unbounded() -> Self {
        Self([None; 4])
    }

    pub fn with(mut self, v: Var, cap: u32) -> Self {
        self.0[v.index()] = Some(cap);
        self
    }

    pub fn get(&self, v: Var) -> Option<u32> {
        self.0[v.index()]
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        Var::ALL
            .iter()
            .all(|&v| self.get(v).is_none_or(|c| m.exponent(v) <= c))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Caps) -> Caps {
        Caps(core::array::from_fn(|i| match (self.0[i], other.0[i]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }))
    }

    pub fn swap(self, a: Var, b: Var) -> Self {
        let mut c = self.0;
        c.swap(a.index(), b.index());
        Self(c)
    }

    pub fn is_unbounded(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            if let Some(c) = self.get(v) {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{v}={c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Caps {
    type Err = Error;

    /// Parses `"u=4,t=10,q=10"`. The empty string is unbounded.
    fn from_str(s: &str) -> Result<Self> {
        let mut caps = Caps::unbounded();
        for item in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (v, c) = item.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(alloc::format!("cap `{item}` is not of the form v=N"))
            })?;
            let c: u32 = c.trim().parse().map_err(|_| {
                Error::InvalidArgument(alloc::format!("cap `{item}` is not a non-negative integer"))
            })?;
            caps = caps.with(v.parse()?, c);
        }
        Ok(caps)
    }
}

/// A signed monomial `c·m`, used as the first argument of Pochhammer symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub monomial: Monomial,
}

impl Term {
    pub fn new(coeff: i64, monomial: Monomial) -> Self {
        Self { coeff, monomial }
    }
}

/// A truncated power series. Stored terms never exceed the caps and never
/// have zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    caps: Caps,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Series {
    pub fn zero(caps: Caps) -> Self {
        Self {
            caps,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(caps: Caps) -> Self {
        Self::monomial(BigInt::one(), Monomial::ONE, caps)
    }

    pub fn constant(c: impl Into<BigInt>, caps: Caps) -> Self {
        Self::monomial(c.into(), Monomial::ONE, caps)
    }

    /// `c·m`, or zero when `m` lies beyond the caps.
    pub fn monomial(c: BigInt, m: Monomial, caps: Caps) -> Self {
        let mut s = Self::zero(caps);
        s.add_term(m, c);
        s
    }

    pub fn from_terms<C: Into<BigInt>>(
        caps: Caps,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut s = Self::zero(caps);
        for (m, c) in terms {
            s.add_term(m, c.into());
        }
        s
    }

    /// Univariate polynomial `Σ coeffs[i]·v^i`.
    pub fn univariate(v: Var, coeffs: &[i64], caps: Caps) -> Self {
        Self::from_terms(
            caps,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::ONE.with(v, i as u32), c)),
        )
    }

    /// Adds `c·m` in place, dropping it when beyond the caps.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || !self.caps.admits(&m) {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Number of stored (nonzero) terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::ONE)
    }

    /// Largest exponent of `v` among the stored terms.
    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    /// Reduces modulo the tighter of the current caps and `caps`.
    pub fn truncate(&self, caps: Caps) -> Series {
        let caps = self.caps.meet(&caps);
        Series {
            caps,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| caps.admits(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Multiplies by the monomial `m`.
    pub fn shift(&self, m: Monomial) -> Series {
        let mut out = Series::zero(self.caps);
        for (k, c) in &self.terms {
            out.add_term(*k * m, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        let mut out = Series::zero(self.caps);
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(self.caps);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exchanges two variables, caps included.
    pub fn swap_vars(&self, a: Var, b: Var) -> Series {
        Series {
            caps: self.caps.swap(a, b),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap(a, b), c.clone()))
                .collect(),
        }
    }

    /// Sets `v = 1`. The variable's cap is dropped.
    pub fn specialize_one(&self, v: Var) -> Series {
        let mut caps = self.caps;
        caps.0[v.index()] = None;
        let mut out = Series::zero(caps);
        for (m, c) in &self.terms {
            out.add_term(m.with(v, 0), c.clone());
        }
        out
    }

    /// Coefficientwise non-negativity.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The multiplicative inverse modulo the truncation ideal.
    ///
    /// Needs constant term `±1`, and a cap on every variable that occurs.
    pub fn invert(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !(c0.is_one() || (-&c0).is_one()) {
            return Err(Error::NonUnitConstant);
        }
        // Variables absent from `self` are absent from the inverse, so the
        // coefficient box only spans the occurring ones.
        let mut dims = [0usize; 4];
        for v in Var::ALL {
            if self.degree(v).unwrap_or(0) > 0 {
                let cap = self.caps.get(v).ok_or(Error::Uncapped(v))?;
                dims[v.index()] = cap as usize + 1;
            } else {
                dims[v.index()] = 1;
            }
        }
        let stride = [dims[1] * dims[2] * dims[3], dims[2] * dims[3], dims[3], 1];
        let index = |m: &Monomial| -> usize { (0..4).map(|i| m.0[i] as usize * stride[i]).sum() };
        let total = dims.iter().product::<usize>();
        let tail: Vec<(Monomial, &BigInt)> = self
            .terms
            .iter()
            .filter(|(m, _)| !m.is_one())
            .map(|(m, c)| (*m, c))
            .collect();

        let mut g: Vec<BigInt> = vec![BigInt::zero(); total];
        let mut out = Series::zero(self.caps);
        // Lexicographic order visits every m - a (a != 0) before m.
        for flat in 0..total {
            let m = Monomial(core::array::from_fn(|i| {
                ((flat / stride[i]) % dims[i]) as u32
            }));
            let mut acc = if flat == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            for (a, fa) in &tail {
                if let Some(rest) = m.checked_div(*a) {
                    let gr = &g[index(&rest)];
                    if !gr.is_zero() {
                        acc -= *fa * gr;
                    }
                }
            }
            // c0 is ±1, hence its own inverse.
            let value = acc * &c0;
            if !value.is_zero() {
                out.add_term(m, value.clone());
            }
            g[flat] = value;
        }
        Ok(out)
    }

    /// Exact division by a polynomial in the single variable `v`.
    ///
    /// Both operands must be polynomials in `v` (no cap on `v`); other
    /// variables in `self` are treated as coefficients.
    pub fn div_exact(&self, divisor: &Series, v: Var) -> Result<Series> {
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        if divisor
            .terms
            .keys()
            .any(|m| Var::ALL.iter().any(|&w| w != v && m.exponent(w) > 0))
        {
            return Err(Error::InvalidArgument(alloc::format!(
                "divisor must be univariate in {v}"
            )));
        }
        if self.caps.get(v).is_some() || divisor.caps.get(v).is_some() {
            return Err(Error::InvalidArgument(alloc::format!(
                "exact division needs {v} to be uncapped"
            )));
        }
        let d_deg = divisor.degree(v).unwrap_or(0);
        let lead = divisor.coeff(&Monomial::ONE.with(v, d_deg));

        // Group the dividend into slices sharing the non-`v` part.
        let mut slices: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            let slice = slices.entry(m.with(v, 0)).or_default();
            if slice.len() <= e {
                slice.resize(e + 1, BigInt::zero());
            }
            slice[e] = c.clone();
        }
        let mut dcoeffs = vec![BigInt::zero(); d_deg as usize + 1];
        for (m, c) in &divisor.terms {
            dcoeffs[m.exponent(v) as usize] = c.clone();
        }

        let mut out = Series::zero(self.caps.meet(&divisor.caps));
        for (base, mut rem) in slices {
            while rem.len() > d_deg as usize {
                let top = rem.len() - 1;
                let c = rem[top].clone();
                if !c.is_zero() {
                    if !(&c % &lead).is_zero() {
                        return Err(Error::InexactDivision);
                    }
                    let qc = &c / &lead;
                    let shift = top - d_deg as usize;
                    for (i, dc) in dcoeffs.iter().enumerate() {
                        rem[shift + i] -= &qc * dc;
                    }
                    out.add_term(base.with(v, shift as u32), qc);
                }
                rem.pop();
            }
            if rem.iter().any(|c| !c.is_zero()) {
                return Err(Error::InexactDivision);
            }
        }
        Ok(out)
    }

    /// First monomial, in ascending order, where the two series disagree.
    pub fn first_difference(&self, other: &Series) -> Option<(Monomial, BigInt, BigInt)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let (a, b) = (self.coeff(m), other.coeff(m));
            (a != b).then_some((*m, a, b))
        })
    }
}

impl Add<&Series> for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let mut out = self.truncate(rhs.caps);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let mut out = self.truncate(rhs.caps);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            caps: self.caps,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let caps = self.caps.meet(&rhs.caps);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (a, ca) in &self.terms {
            if !caps.admits(a) {
                continue;
            }
            for (b, cb) in &rhs.terms {
                let m = *a * *b;
                if caps.admits(&m) {
                    *acc.entry(m).or_default() += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Series { caps, terms: acc }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Series> for Series {
            type Output = Series;
            fn $f(self, rhs: Series) -> Series {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $f(self, rhs: &Series) -> Series {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: u32) -> Monomial {
        Monomial::var(Var::Q).pow(k)
    }

    #[test]
    fn geometric_inverse() {
        let caps = Caps::unbounded().with(Var::Q, 6);
        let f = Series::univariate(Var::Q, &[1, -1], caps);
        let g = f.invert().unwrap();
        assert_eq!(g, Series::univariate(Var::Q, &[1; 7], caps));
    }

    #[test]
    fn invert_times_self_is_one() {
        let caps = Caps::unbounded().with(Var::T, 12).with(Var::Q, 12);
        // (t;q)_3 = (1-t)(1-tq)(1-tq^2)
        let mut f = Series::one(caps);
        for i in 0..3 {
            let factor = &Series::one(caps)
                - &Series::monomial(
                    BigInt::one(),
                    Monomial::of(&[(Var::T, 1), (Var::Q, i)]),
                    caps,
                );
            f = &f * &factor;
        }
        let g = f.invert().unwrap();
        assert_eq!(&f * &g, Series::one(caps));
        assert_eq!(&g * &f, Series::one(caps));
    }

    #[test]
    fn invert_rejects_non_units_and_uncapped() {
        let caps = Caps::unbounded().with(Var::Q, 3);
        assert_eq!(
            Series::univariate(Var::Q, &[2, 1], caps).invert(),
            Err(Error::NonUnitConstant)
        );
        assert_eq!(
            Series::univariate(Var::T, &[1, 1], caps).invert(),
            Err(Error::Uncapped(Var::T))
        );
        let neg = Series::univariate(Var::Q, &[-1, 1], caps).invert().unwrap();
        assert_eq!(neg, Series::univariate(Var::Q, &[-1, -1, -1, -1], caps));
    }

    #[test]
    fn caps_drop_terms() {
        let caps = Caps::unbounded().with(Var::Q, 2);
        let f = Series::univariate(Var::Q, &[1, 1, 1, 1], caps);
        assert_eq!(f.len(), 3);
        assert_eq!(f.degree(Var::Q), Some(2));
    }

    #[test]
    fn exact_division() {
        let u = Caps::unbounded();
        // (1+q)(1+q+q^2) / (1+q+q^2)
        let a = Series::univariate(Var::Q, &[1, 1], u);
        let b = Series::univariate(Var::Q, &[1, 1, 1], u);
        assert_eq!((&a * &b).div_exact(&b, Var::Q).unwrap(), a);
        assert_eq!(a.div_exact(&b, Var::Q), Err(Error::InexactDivision));
        assert_eq!(
            Series::univariate(Var::Q, &[1, 0, 1], u).div_exact(&a, Var::Q),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn display() {
        let f = Series::from_terms(
            Caps::unbounded(),
            [
                (Monomial::ONE, 1),
                (q(2), -3),
                (Monomial::of(&[(Var::T, 1), (Var::Q, 1)]), 1),
            ],
        );
        assert_eq!(f.to_string(), "1 - 3*q^2 + t*q");
        assert_eq!(Series::zero(Caps::unbounded()).to_string(), "0");
    }

    #[test]
    fn caps_parse() {
        let c: Caps = "u=4, t=10,q=10".parse().unwrap();
        assert_eq!(c.get(Var::U), Some(4));
        assert_eq!(c.get(Var::P), None);
        assert_eq!(c.to_string(), "u=4,t=10,q=10");
        assert!("u4".parse::<Caps>().is_err());
        assert!("z=1".parse::<Caps>().is_err());
    }

    fn arb_series() -> impl Strategy<Value = Series> {
        let caps = Caps::unbounded().with(Var::T, 4).with(Var::Q, 5);
        proptest::collection::vec(((0u32..6, 0u32..7), -20i64..20), 0..8).prop_map(move |ts| {
            Series::from_terms(
                caps,
                ts.into_iter()
                    .map(|((t, qq), c)| (Monomial::of(&[(Var::T, t), (Var::Q, qq)]), c)),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            let m = Monomial::of(&[(Var::Q, 1)]);
            prop_assert_eq!((&a + &b).coeff(&m), a.coeff(&m) + b.coeff(&m));
        }

        #[test]
        fn invert_is_two_sided(a in arb_series(), sign in prop::bool::ANY) {
            let c0 = if sign { 1 } else { -1 };
            let mut f = a.clone();
            let cur = f.constant_term();
            f.add_term(Monomial::ONE, BigInt::from(c0) - cur);
            let g = f.invert().unwrap();
            let one = Series::one(f.caps());
            prop_assert_eq!(&f * &g, one.clone());
            prop_assert_eq!(&g * &f, one);
        }
    }
}
