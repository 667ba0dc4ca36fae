//! Exhaustive and truncated-series verification of the equidistribution
//! identities.
//!
//! Each [`IdentityId`] runs a family of comparisons over a range of ranks
//! (and, where relevant, over every descent set). Every comparison is an
//! exact polynomial or truncated-series equality; the first mismatch is kept
//! as a [`Witness`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::classes::{
    bar_map, chain_blocks, construct_class, descent_class_filter, expand_shuffles, phi_map,
    DescentClassSpec, Flavor, Mode,
};
use crate::error::{Error, Result};
use crate::gf::{
    b_dlen_by_r_sum, closed_form_a, closed_form_b, closed_form_b_dlen, closed_form_d, gf, gf_q,
    poincare_oracle, q_binomial_sum,
};
use crate::group::{factor_quotient, iter_group, quotient_increasing, Group};
use crate::perm::{DescentSet, SignedPermutation};
use crate::qanalog::{double_pochhammer, pochhammer, q_exponential, q_factorial, q_int, Bound};
use crate::series::{Caps, Monomial, Series, Term, Var};
use crate::stats::{des_mask, statistics, StatKey, StatisticBundle};

macro_rules! identities {
    ($($variant:ident => $name:literal, $about:literal;)*) => {
        /// The identities the verifier knows.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($variant,)* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$variant => $name,)* }
            }

            pub fn about(self) -> &'static str {
                match self { $(IdentityId::$variant => $about,)* }
            }
        }
    };
}

identities! {
    MacmahonA => "macmahon_A", "maj and inv are equidistributed on S_n";
    Fs1A => "fs1_A", "maj and inv agree on exact inverse descent classes of S_n";
    Fs2A => "fs2_A", "(maj, inv) and (inv, maj) are equidistributed on S_n";
    Eqs1To5 => "eqs_1_to_5", "per-element relations between N1, N2, maj, des and the negative statistics";
    MahonianB => "mahonian_B", "nmaj, fmaj and length are equidistributed on B_n";
    MahonianD => "mahonian_D", "dmaj and length are equidistributed on D_n";
    StanleyA => "stanley_A", "maj and inv over S_n descent classes give the q-multinomial";
    ClassB => "class_B", "nmaj, length and fmaj over B(M) match the product formula";
    ClassBDlen => "class_B_dlen", "type-D length over B(M) matches its product formula";
    ClassBDesVariant => "class_B_des_variant", "plain-Des classes, and the NDes/DDes negative control";
    ClassD => "class_D", "dmaj and length over D(M) match the three-case formula";
    ClassConstruction => "class_construction", "shuffle-block classes equal the brute-force filter";
    SplitProps => "split_props", "bar map, phi map and chain splitting of B(M)";
    Lemmino => "lemmino", "sign statistics over the increasing quotients";
    QuotientFactorization => "quotient_factorization", "unique length-additive factorization through the quotient";
    QBinomialTheorem => "q_binomial_theorem", "(-xq;q)_n expands by q-binomials";
    SymmetryB => "symmetry_B", "(nmaj, length) is symmetric on B_n";
    SymmetryD => "symmetry_D", "(dmaj, length) is symmetric on D_n";
    RoselleA => "roselle_A", "Roselle's series for S_n, truncated";
    RoselleB => "roselle_B", "Roselle's series for B_n, truncated";
    RoselleD => "roselle_D", "Roselle's series for D_n, truncated";
    GesselA => "gessel_A", "Gessel's series for S_n, truncated";
    GesselB => "gessel_B", "Gessel's series for B_n, truncated";
    GesselD => "gessel_D", "Gessel's series for D_n, truncated";
}

impl IdentityId {
    /// Caps used when the caller gives none, for the series identities.
    pub fn default_caps(self) -> Option<Caps> {
        use IdentityId::*;
        match self {
            RoselleA | RoselleB | RoselleD => Some(
                Caps::unbounded()
                    .with(Var::U, 4)
                    .with(Var::T, 10)
                    .with(Var::Q, 10),
            ),
            GesselA | GesselB | GesselD => Some(
                Caps::unbounded()
                    .with(Var::U, 3)
                    .with(Var::P, 3)
                    .with(Var::T, 8)
                    .with(Var::Q, 8),
            ),
            _ => None,
        }
    }

    pub fn is_series(self) -> bool {
        self.default_caps().is_some()
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    pub n_min: usize,
    pub n_max: usize,
    /// Restricts descent-class identities to this one set (per rank where it fits).
    pub set: Option<Vec<u32>>,
    pub mode: Mode,
    /// Overrides [`IdentityId::default_caps`].
    pub caps: Option<Caps>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self::range(1, 4)
    }
}

impl VerifyParams {
    pub fn range(n_min: usize, n_max: usize) -> Self {
        Self {
            n_min,
            n_max,
            set: None,
            mode: Mode::Subset,
            caps: None,
        }
    }

    pub fn single(n: usize) -> Self {
        Self::range(n, n)
    }

    pub fn with_set(mut self, members: Vec<u32>) -> Self {
        self.set = Some(members);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = Some(caps);
        self
    }

    fn ranks(&self) -> RangeInclusive<usize> {
        self.n_min.max(1)..=self.n_max
    }

    /// Descent sets to sweep at rank `n`.
    fn sets(&self, n: usize, allow_zero: bool) -> Vec<DescentSet> {
        match &self.set {
            Some(members) => DescentSet::new(n, members.iter().copied())
                .ok()
                .filter(|m| allow_zero || !m.contains(0))
                .into_iter()
                .collect(),
            None => DescentSet::all(n)
                .filter(|m| allow_zero || !m.contains(0))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// First disagreement found by a verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which comparison failed, e.g. `n=3 M={0,2} nmaj vs len_B`.
    pub label: String,
    pub monomial: Monomial,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: IdentityId,
    pub status: Status,
    /// Number of individual comparisons made.
    pub checks: usize,
    /// Label of the comparison whose sides are reported: the first failure,
    /// or the last comparison when everything passed.
    pub label: String,
    pub lhs: Series,
    pub rhs: Series,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

struct Checker {
    id: IdentityId,
    checks: usize,
    shown: Option<(String, Series, Series)>,
    witness: Option<Witness>,
    notes: Vec<String>,
}

impl Checker {
    fn new(id: IdentityId) -> Self {
        Self {
            id,
            checks: 0,
            shown: None,
            witness: None,
            notes: Vec::new(),
        }
    }

    fn failed(&self) -> bool {
        self.witness.is_some()
    }

    fn series(&mut self, label: impl FnOnce() -> String, lhs: &Series, rhs: &Series) {
        self.checks += 1;
        if self.failed() {
            return;
        }
        let caps = lhs.caps().meet(&rhs.caps());
        let (l, r) = (lhs.truncate(caps), rhs.truncate(caps));
        let label = label();
        if let Some((monomial, a, b)) = l.first_difference(&r) {
            self.witness = Some(Witness {
                label: label.clone(),
                monomial,
                lhs: a,
                rhs: b,
            });
        }
        self.shown = Some((label, l, r));
    }

    fn value(&mut self, label: impl FnOnce() -> String, lhs: i64, rhs: i64) {
        if lhs == rhs && !self.failed() {
            self.checks += 1;
            if self.shown.is_none() {
                let u = Caps::unbounded();
                self.shown = Some((label(), Series::constant(lhs, u), Series::constant(rhs, u)));
            }
            return;
        }
        let u = Caps::unbounded();
        self.series(label, &Series::constant(lhs, u), &Series::constant(rhs, u));
    }

    /// Equality of two sorted element lists; sides are reported as cardinalities.
    fn lists(
        &mut self,
        label: impl FnOnce() -> String,
        lhs: &[SignedPermutation],
        rhs: &[SignedPermutation],
    ) {
        self.checks += 1;
        if self.failed() {
            return;
        }
        let label = label();
        let u = Caps::unbounded();
        let (l, r) = (
            Series::constant(lhs.len() as i64, u),
            Series::constant(rhs.len() as i64, u),
        );
        if lhs != rhs {
            let odd = lhs
                .iter()
                .zip(rhs)
                .find(|(a, b)| a != b)
                .map(|(a, b)| alloc::format!("first difference {a} vs {b}"))
                .unwrap_or_else(|| "one list is a prefix of the other".into());
            self.witness = Some(Witness {
                label: alloc::format!("{label}: {odd}"),
                monomial: Monomial::ONE,
                lhs: lhs.len().into(),
                rhs: rhs.len().into(),
            });
        }
        self.shown = Some((label, l, r));
    }

    fn finish(self) -> Result<Outcome> {
        let Some((label, lhs, rhs)) = self.shown else {
            return Err(Error::InvalidArgument(alloc::format!(
                "{}: no comparisons apply to the given parameters",
                self.id
            )));
        };
        Ok(Outcome {
            id: self.id,
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            checks: self.checks,
            label,
            lhs,
            rhs,
            witness: self.witness,
            notes: self.notes,
        })
    }
}

/// Runs one identity.
pub fn verify(id: IdentityId, params: &VerifyParams) -> Result<Outcome> {
    let mut c = Checker::new(id);
    use IdentityId::*;
    match id {
        MacmahonA => macmahon(&mut c, params),
        Fs1A => fs1(&mut c, params),
        Fs2A => symmetry(&mut c, params, Group::A),
        Eqs1To5 => eqs_1_to_5(&mut c, params),
        MahonianB => mahonian(&mut c, params, Group::B),
        MahonianD => mahonian(&mut c, params, Group::D),
        StanleyA => stanley(&mut c, params),
        ClassB => class_b(&mut c, params),
        ClassBDlen => class_b_dlen(&mut c, params),
        ClassBDesVariant => des_variant(&mut c, params)?,
        ClassD => class_d(&mut c, params)?,
        ClassConstruction => class_construction(&mut c, params)?,
        SplitProps => split_props(&mut c, params)?,
        Lemmino => lemmino(&mut c, params),
        QuotientFactorization => factorization(&mut c, params)?,
        QBinomialTheorem => q_binomial_theorem(&mut c, params),
        SymmetryB => symmetry(&mut c, params, Group::B),
        SymmetryD => symmetry(&mut c, params, Group::D),
        RoselleA => roselle(&mut c, params, Group::A)?,
        RoselleB => roselle(&mut c, params, Group::B)?,
        RoselleD => roselle(&mut c, params, Group::D)?,
        GesselA => gessel(&mut c, params, Group::A)?,
        GesselB => gessel(&mut c, params, Group::B)?,
        GesselD => gessel(&mut c, params, Group::D)?,
    }
    c.finish()
}

/// Elements of a group bucketed by the exact descent mask of the inverse.
struct ClassTable {
    n: usize,
    buckets: Vec<Vec<SignedPermutation>>,
}

impl ClassTable {
    fn new(group: Group, n: usize, flavor: Flavor) -> Self {
        let mut buckets = vec![Vec::new(); 1 << n];
        for p in iter_group(group, n) {
            buckets[flavor.mask(&p.inverse()) as usize].push(p);
        }
        Self { n, buckets }
    }

    fn exact(&self, set: &DescentSet) -> &[SignedPermutation] {
        &self.buckets[set.mask() as usize]
    }

    fn subset(&self, set: &DescentSet) -> impl Iterator<Item = &SignedPermutation> {
        let m = set.mask();
        self.buckets
            .iter()
            .enumerate()
            .filter(move |(k, _)| *k as u64 & !m == 0)
            .flat_map(|(_, v)| v.iter())
    }

    /// `Σ_{K ⊆ M} (-1)^{|M \ K|} gf(subset class of K)`.
    fn inclusion_exclusion(&self, set: &DescentSet, key: StatKey) -> Series {
        let mut acc = Series::zero(Caps::unbounded());
        for k in set.subsets() {
            let g = gf_q(self.subset(&k), key);
            acc = if (set.len() - k.len()).is_multiple_of(2) {
                acc + g
            } else {
                acc - g
            };
        }
        debug_assert_eq!(self.n, set.rank());
        acc
    }
}

fn macmahon(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        let maj = gf_q(iter_group(Group::A, n), StatKey::Maj);
        let inv = gf_q(iter_group(Group::A, n), StatKey::Inv);
        c.series(|| alloc::format!("n={n} maj vs inv"), &maj, &inv);
        c.series(
            || alloc::format!("n={n} inv vs [n]_q!"),
            &inv,
            &poincare_oracle(Group::A, n),
        );
    }
}

fn fs1(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        let table = ClassTable::new(Group::A, n, Flavor::Des);
        for m in params.sets(n, false) {
            let class = table.exact(&m);
            c.series(
                || alloc::format!("n={n} Des(σ^-1)={m} maj vs inv"),
                &gf_q(class, StatKey::Maj),
                &gf_q(class, StatKey::Inv),
            );
        }
    }
}

fn stanley(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        let table = ClassTable::new(Group::A, n, Flavor::Des);
        for m in params.sets(n, false) {
            let maj = gf_q(table.subset(&m), StatKey::Maj);
            let inv = gf_q(table.subset(&m), StatKey::Inv);
            c.series(|| alloc::format!("n={n} M={m} maj vs inv"), &maj, &inv);
            let closed = closed_form_a(&m).expect("0 excluded");
            c.series(
                || alloc::format!("n={n} M={m} inv vs q-multinomial"),
                &inv,
                &closed,
            );
        }
    }
}

fn eqs_1_to_5(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        for p in iter_group(Group::B, n) {
            let s = statistics(&p);
            let neg_sum: i64 = p
                .window()
                .iter()
                .filter(|&&v| v < 0)
                .map(|&v| -(v as i64))
                .sum();
            let (inv, maj, des) = (s.inv as i64, s.maj as i64, s.des as i64);
            let (n1, n2) = (s.n1 as i64, s.n2 as i64);
            let rows: [(&str, i64, i64); 7] = [
                ("(1) N1+N2", n1 + n2, neg_sum),
                ("(2) nmaj", s.nmaj as i64, maj + n1 + n2),
                ("(3) ndes", s.ndes as i64, des + n1),
                ("(4) dmaj", s.dmaj as i64, maj + n2),
                ("(5) ddes", s.ddes as i64, des + n1 + s.epsilon as i64),
                ("len_B", s.len_b as i64, inv + n1 + n2),
                ("len_D", s.len_d as i64, inv + n2),
            ];
            for (name, lhs, rhs) in rows {
                c.value(|| alloc::format!("{p} {name}"), lhs, rhs);
            }
            let eps_ok = (s.epsilon == -1) == p.window().contains(&-1);
            c.value(|| alloc::format!("{p} epsilon"), eps_ok as i64, 1);
        }
    }
}

fn mahonian(c: &mut Checker, params: &VerifyParams, group: Group) {
    let (major, length) = match group {
        Group::D => (StatKey::Dmaj, StatKey::LenD),
        _ => (StatKey::Nmaj, StatKey::LenB),
    };
    for n in params.ranks() {
        let len = gf_q(iter_group(group, n), length);
        let maj = gf_q(iter_group(group, n), major);
        c.series(|| alloc::format!("n={n} {major} vs {length}"), &maj, &len);
        if group == Group::B {
            let fmaj = gf_q(iter_group(group, n), StatKey::Fmaj);
            c.series(|| alloc::format!("n={n} fmaj vs {length}"), &fmaj, &len);
        }
        c.series(
            || alloc::format!("n={n} {length} vs Poincaré product"),
            &len,
            &poincare_oracle(group, n),
        );
    }
}

fn class_b(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        let table = ClassTable::new(Group::B, n, Flavor::DesB);
        for m in params.sets(n, true) {
            match params.mode {
                Mode::Subset => {
                    let closed = closed_form_b(&m);
                    for key in [StatKey::Nmaj, StatKey::LenB, StatKey::Fmaj] {
                        let g = gf_q(table.subset(&m), key);
                        c.series(
                            || alloc::format!("n={n} M={m} {key} vs product"),
                            &g,
                            &closed,
                        );
                    }
                }
                Mode::Exact => {
                    let class = table.exact(&m);
                    let len = gf_q(class, StatKey::LenB);
                    for key in [StatKey::Nmaj, StatKey::Fmaj] {
                        let g = gf_q(class, key);
                        c.series(
                            || alloc::format!("n={n} Des_B={m} {key} vs len_B"),
                            &g,
                            &len,
                        );
                    }
                    let ie = table.inclusion_exclusion(&m, StatKey::LenB);
                    c.series(
                        || alloc::format!("n={n} Des_B={m} filter vs inclusion-exclusion"),
                        &len,
                        &ie,
                    );
                }
            }
        }
    }
}

fn class_b_dlen(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        let table = ClassTable::new(Group::B, n, Flavor::DesB);
        for m in params.sets(n, true) {
            let g = gf_q(table.subset(&m), StatKey::LenD);
            let closed = closed_form_b_dlen(&m);
            c.series(
                || alloc::format!("n={n} M={m} len_D over B(M) vs product"),
                &g,
                &closed,
            );
            c.series(
                || alloc::format!("n={n} M={m} r-sum vs product"),
                &b_dlen_by_r_sum(&m),
                &closed,
            );
        }
    }
}

fn class_d(c: &mut Checker, params: &VerifyParams) -> Result<()> {
    for n in params.ranks() {
        let table = ClassTable::new(Group::D, n, Flavor::DesD);
        for m in params.sets(n, true) {
            match params.mode {
                Mode::Subset => {
                    let closed = closed_form_d(&m)?;
                    for key in [StatKey::Dmaj, StatKey::LenD] {
                        let g = gf_q(table.subset(&m), key);
                        c.series(
                            || alloc::format!("n={n} M={m} {key} vs product"),
                            &g,
                            &closed,
                        );
                    }
                }
                Mode::Exact => {
                    let class = table.exact(&m);
                    let len = gf_q(class, StatKey::LenD);
                    let dmaj = gf_q(class, StatKey::Dmaj);
                    c.series(
                        || alloc::format!("n={n} Des_D={m} dmaj vs len_D"),
                        &dmaj,
                        &len,
                    );
                    let ie = table.inclusion_exclusion(&m, StatKey::LenD);
                    c.series(
                        || alloc::format!("n={n} Des_D={m} filter vs inclusion-exclusion"),
                        &len,
                        &ie,
                    );
                }
            }
        }
    }
    Ok(())
}

/// Groups a group's elements by a set-valued statistic of the inverse,
/// then returns the first class on which `major` and `length` differ.
fn negative_control(
    group: Group,
    major: StatKey,
    length: StatKey,
    descents: impl Fn(&StatisticBundle) -> Vec<u32>,
) -> Option<(usize, Vec<u32>, Series, Series)> {
    for n in 1..=4 {
        let mut classes: BTreeMap<Vec<u32>, Vec<SignedPermutation>> = BTreeMap::new();
        for p in iter_group(group, n) {
            let mut d = descents(&statistics(&p.inverse()));
            d.dedup();
            classes.entry(d).or_default().push(p);
        }
        for (set, class) in classes {
            let (a, b) = (gf_q(&class, major), gf_q(&class, length));
            if a != b {
                return Some((n, set, a, b));
            }
        }
    }
    None
}

fn des_variant(c: &mut Checker, params: &VerifyParams) -> Result<()> {
    for n in params.ranks() {
        for (group, major, length, fmaj) in [
            (Group::B, StatKey::Nmaj, StatKey::LenB, true),
            (Group::D, StatKey::Dmaj, StatKey::LenD, false),
        ] {
            let all: Vec<SignedPermutation> = iter_group(group, n).collect();
            for m in params.sets(n, false) {
                let mask = m.mask();
                let plain: Vec<SignedPermutation> = all
                    .iter()
                    .filter(|p| des_mask(&p.inverse()) & !mask == 0)
                    .cloned()
                    .collect();
                let spec = DescentClassSpec::new(group, m.with(0)?, Mode::Subset)?;
                c.lists(
                    || alloc::format!("{group} n={n} Des ⊆ {m} vs natural class of M ∪ {{0}}"),
                    &plain,
                    &descent_class_filter(&spec),
                );
                let exact: Vec<&SignedPermutation> = plain
                    .iter()
                    .filter(|p| des_mask(&p.inverse()) == mask)
                    .collect();
                let mut keys = vec![major];
                if fmaj {
                    keys.push(StatKey::Fmaj);
                }
                for key in keys {
                    c.series(
                        || alloc::format!("{group} n={n} Des ⊆ {m} {key} vs {length}"),
                        &gf_q(&plain, key),
                        &gf_q(&plain, length),
                    );
                    c.series(
                        || alloc::format!("{group} n={n} Des = {m} {key} vs {length}"),
                        &gf_q(exact.iter().copied(), key),
                        &gf_q(exact.iter().copied(), length),
                    );
                }
            }
        }
    }

    let controls = [
        (
            "NDes",
            negative_control(Group::B, StatKey::Nmaj, StatKey::LenB, |s| {
                s.ndes_multiset.clone()
            }),
        ),
        (
            "DDes",
            negative_control(Group::D, StatKey::Dmaj, StatKey::LenD, |s| {
                s.ddes_multiset.clone()
            }),
        ),
    ];
    for (name, found) in controls {
        match found {
            Some((n, set, a, b)) => {
                c.checks += 1;
                c.notes.push(alloc::format!(
                    "negative control: {name}-classes break equidistribution at n={n}, {name}(inverse)={set:?}: {a} vs {b}"
                ));
            }
            None => {
                let one = Series::one(Caps::unbounded());
                let zero = Series::zero(Caps::unbounded());
                c.series(
                    || alloc::format!("negative control: no {name} counterexample for n <= 4"),
                    &zero,
                    &one,
                );
            }
        }
    }
    Ok(())
}

fn class_construction(c: &mut Checker, params: &VerifyParams) -> Result<()> {
    for n in params.ranks() {
        for group in [Group::A, Group::B, Group::D] {
            for m in params.sets(n, group != Group::A) {
                let mut built = construct_class(group, &m)?;
                let emitted = built.len();
                built.sort_unstable();
                built.dedup();
                c.value(
                    || alloc::format!("{group} n={n} M={m} duplicates in construction"),
                    emitted as i64,
                    built.len() as i64,
                );
                let spec = DescentClassSpec::new(group, m.clone(), Mode::Subset)?;
                c.lists(
                    || alloc::format!("{group} n={n} M={m} blocks vs filter"),
                    &built,
                    &descent_class_filter(&spec),
                );
            }
        }
    }
    Ok(())
}

fn sorted(mut v: Vec<SignedPermutation>) -> Vec<SignedPermutation> {
    v.sort_unstable();
    v
}

fn split_props(c: &mut Checker, params: &VerifyParams) -> Result<()> {
    for n in params.ranks() {
        let b_table = ClassTable::new(Group::B, n, Flavor::DesB);
        let d_table = ClassTable::new(Group::D, n, Flavor::DesD);
        for m in params.sets(n, true) {
            let b: Vec<SignedPermutation> = sorted(b_table.subset(&m).cloned().collect());
            let d: Vec<SignedPermutation> = sorted(d_table.subset(&m).cloned().collect());
            let gb = gf_q(&b, StatKey::LenD);
            let gd = gf_q(&d, StatKey::LenD);
            let ctx = alloc::format!("n={n} M={m}");
            if m.contains(0) {
                let bar: Vec<SignedPermutation> = d.iter().map(bar_map).collect();
                let preserved = d
                    .iter()
                    .zip(&bar)
                    .filter(|(g, h)| statistics(g).len_d == statistics(h).len_d)
                    .count();
                c.value(
                    || alloc::format!("{ctx} bar preserves len_D"),
                    preserved as i64,
                    d.len() as i64,
                );
                let disjoint = bar.iter().filter(|p| d.binary_search(p).is_ok()).count();
                c.value(
                    || alloc::format!("{ctx} D(M) ∩ bar D(M)"),
                    disjoint as i64,
                    0,
                );
                let union = sorted(d.iter().cloned().chain(bar).collect());
                c.lists(
                    || alloc::format!("{ctx} D(M) ⊎ bar D(M) vs B(M)"),
                    &union,
                    &b,
                );
                c.series(
                    || alloc::format!("{ctx} len_D over B(M) vs 2·D(M)"),
                    &gb,
                    &gd.scale(&2.into()),
                );
                c.value(
                    || alloc::format!("{ctx} |B(M)| vs 2|D(M)|"),
                    b.len() as i64,
                    2 * d.len() as i64,
                );
            } else if !m.contains(1) {
                let mut images = Vec::with_capacity(b.len());
                let mut preserved = 0;
                for p in &b {
                    let img = phi_map(p, &m)?;
                    let (s, t) = (statistics(p), statistics(&img));
                    if s.inv == t.inv && s.n2 == t.n2 {
                        preserved += 1;
                    }
                    images.push(img);
                }
                c.value(
                    || alloc::format!("{ctx} phi preserves inv and N2"),
                    preserved,
                    b.len() as i64,
                );
                c.lists(
                    || alloc::format!("{ctx} phi(B(M)) vs D(M)"),
                    &sorted(images),
                    &d,
                );
                c.series(|| alloc::format!("{ctx} len_D over B(M) vs D(M)"), &gb, &gd);
                c.value(
                    || alloc::format!("{ctx} |B(M)| vs |D(M)|"),
                    b.len() as i64,
                    d.len() as i64,
                );
            } else {
                let m2 = m.m(2);
                let mut union = Vec::with_capacity(b.len());
                for i in 1..=m2 {
                    let piece: Vec<SignedPermutation> = chain_blocks(&m, i)?
                        .iter()
                        .flat_map(expand_shuffles)
                        .collect();
                    c.value(
                        || alloc::format!("{ctx} |D_1..{i}(M)| vs |D(M)|"),
                        piece.len() as i64,
                        d.len() as i64,
                    );
                    let shift = Monomial::ONE.with(Var::Q, i as u32 - 1);
                    c.series(
                        || alloc::format!("{ctx} len_D over D_1..{i}(M) vs q^{} D(M)", i - 1),
                        &gf_q(&piece, StatKey::LenD),
                        &gd.shift(shift),
                    );
                    union.extend(piece);
                }
                c.lists(
                    || alloc::format!("{ctx} ⊎ D_1..i(M) vs B(M)"),
                    &sorted(union),
                    &b,
                );
                c.series(
                    || alloc::format!("{ctx} len_D over B(M) vs [m_2]_q·D(M)"),
                    &gb,
                    &(q_int(m2 as u32) * &gd),
                );
                c.value(
                    || alloc::format!("{ctx} |B(M)| vs m_2|D(M)|"),
                    b.len() as i64,
                    (m2 * d.len()) as i64,
                );
            }
        }
    }
    Ok(())
}

fn neg_pq_pochhammer(n: u32) -> Series {
    pochhammer(
        Term::new(-1, Monomial::of(&[(Var::P, 1), (Var::Q, 1)])),
        Monomial::var(Var::Q),
        n,
        Caps::unbounded(),
    )
}

fn lemmino(c: &mut Checker, params: &VerifyParams) {
    for n in params.ranks() {
        let u = Caps::unbounded();
        let mut b = Series::zero(u);
        for w in quotient_increasing(Group::B, n).expect("type B") {
            let s = statistics(&w);
            b.add_term(
                Monomial::of(&[(Var::P, s.n1), (Var::Q, s.n1 + s.n2)]),
                1.into(),
            );
        }
        c.series(
            || alloc::format!("n={n} B^J vs (-pq;q)_n"),
            &b,
            &neg_pq_pochhammer(n as u32),
        );
        let mut d = Series::zero(u);
        for w in quotient_increasing(Group::D, n).expect("type D") {
            let s = statistics(&w);
            let pe = (s.n1 as i32 + s.epsilon) as u32;
            d.add_term(Monomial::of(&[(Var::P, pe), (Var::Q, s.n2)]), 1.into());
        }
        c.series(
            || alloc::format!("n={n} D^J vs (-pq;q)_(n-1)"),
            &d,
            &neg_pq_pochhammer(n as u32 - 1),
        );
    }
}

fn factorization(c: &mut Checker, params: &VerifyParams) -> Result<()> {
    for n in params.ranks() {
        for group in [Group::B, Group::D] {
            let length = |p: &SignedPermutation| {
                let s = statistics(p);
                if group == Group::B {
                    s.len_b
                } else {
                    s.len_d
                }
            };
            let elements: Vec<SignedPermutation> = iter_group(group, n).collect();
            let mut good = 0;
            for p in &elements {
                let (u, sigma) = factor_quotient(p, group)?;
                let ok = u.is_increasing()
                    && group.contains(&u)
                    && sigma.is_unsigned()
                    && u.compose(&sigma)? == *p
                    && length(p) == length(&u) + statistics(&sigma).inv;
                good += ok as i64;
            }
            c.value(
                || alloc::format!("{group} n={n} factorizations valid and additive"),
                good,
                elements.len() as i64,
            );
            let quotient: Vec<SignedPermutation> = quotient_increasing(group, n)?.collect();
            let mut products = Vec::with_capacity(elements.len());
            for u in &quotient {
                for sigma in iter_group(Group::A, n) {
                    products.push(u.compose(&sigma)?);
                }
            }
            c.lists(
                || alloc::format!("{group} n={n} {{uσ}} vs group"),
                &sorted(products),
                &elements,
            );
        }
    }
    Ok(())
}

fn q_binomial_theorem(c: &mut Checker, params: &VerifyParams) {
    for n in params.n_min..=params.n_max {
        c.series(
            || alloc::format!("n={n} (-xq;q)_n vs q-binomial sum"),
            &neg_pq_pochhammer(n as u32),
            &q_binomial_sum(n as u32, Var::P),
        );
    }
}

/// `(major, length)` for a group, the pair whose joint distribution is symmetric.
fn major_length(group: Group) -> (StatKey, StatKey) {
    match group {
        Group::A => (StatKey::Maj, StatKey::Inv),
        Group::B => (StatKey::Nmaj, StatKey::LenB),
        Group::D => (StatKey::Dmaj, StatKey::LenD),
    }
}

fn descent_number(group: Group) -> StatKey {
    match group {
        Group::A => StatKey::Des,
        Group::B => StatKey::Ndes,
        Group::D => StatKey::Ddes,
    }
}

fn symmetry(c: &mut Checker, params: &VerifyParams, group: Group) {
    let (major, length) = major_length(group);
    for n in params.ranks() {
        let g = gf(
            iter_group(group, n),
            &[(major, Var::T), (length, Var::Q)],
            Caps::unbounded(),
        )
        .expect("uncapped");
        c.series(
            || alloc::format!("{group} n={n} t^{major} q^{length} vs swapped"),
            &g,
            &g.swap_vars(Var::T, Var::Q),
        );
    }
}

/// `Σ_{w} t^major q^length [p^descents]` over the rank-`n` group; 1 at rank 0.
fn joint_gf(group: Group, n: usize, with_p: bool) -> Series {
    if n == 0 {
        return Series::one(Caps::unbounded());
    }
    let (major, length) = major_length(group);
    let mut keys = vec![(major, Var::T), (length, Var::Q)];
    if with_p {
        keys.push((descent_number(group), Var::P));
    }
    gf(iter_group(group, n), &keys, Caps::unbounded()).expect("uncapped")
}

fn required_caps(c: &Checker, params: &VerifyParams, vars: &[Var]) -> Result<Caps> {
    let caps = params
        .caps
        .or(c.id.default_caps())
        .ok_or(Error::InvalidArgument("caps required".into()))?;
    for &v in vars {
        caps.get(v).ok_or(Error::Uncapped(v))?;
    }
    Ok(caps)
}

fn poch(coeff: i64, a: &[(Var, u32)], base: &[(Var, u32)], n: u32, caps: Caps) -> Series {
    pochhammer(
        Term::new(coeff, Monomial::of(a)),
        Monomial::of(base),
        n,
        caps,
    )
}

fn roselle(c: &mut Checker, params: &VerifyParams, group: Group) -> Result<()> {
    let caps = required_caps(c, params, &[Var::U, Var::T, Var::Q])?;
    // p never occurs here.
    let caps = caps.with(Var::P, 0);
    let ucap = caps.get(Var::U).expect("checked");
    let mut lhs = Series::zero(caps);
    for n in 0..=ucap {
        let mut den = poch(1, &[(Var::T, 1)], &[(Var::T, 1)], n, caps)
            * poch(1, &[(Var::Q, 1)], &[(Var::Q, 1)], n, caps);
        match group {
            Group::A => {}
            Group::B => {
                den = den
                    * poch(
                        -1,
                        &[(Var::Q, 1), (Var::T, 1)],
                        &[(Var::Q, 1), (Var::T, 1)],
                        n,
                        caps,
                    )
            }
            Group::D => {
                den = den
                    * poch(
                        -1,
                        &[(Var::Q, 1), (Var::T, 1)],
                        &[(Var::Q, 1), (Var::T, 1)],
                        n.saturating_sub(1),
                        caps,
                    )
            }
        }
        let term = joint_gf(group, n as usize, false).truncate(caps) * den.invert()?;
        lhs = lhs + term.shift(Monomial::ONE.with(Var::U, n));
    }
    let rhs = double_pochhammer(
        Term::new(1, Monomial::var(Var::U)),
        Bound::Infinite,
        Bound::Infinite,
        caps,
    )?
    .invert()?;
    c.series(
        || alloc::format!("{group} Roselle series, caps {caps}"),
        &lhs,
        &rhs,
    );
    if group == Group::B {
        c.notes.push(
            "the n = 0 term is taken as 1; with B_0(t,q) := 0 the left side would have constant term 0 against 1 on the right"
                .into(),
        );
    }
    Ok(())
}

/// Which `(n+1)`-fold denominator the Gessel left side uses.
#[derive(Clone, Copy, PartialEq, Eq)]
enum GesselDenominator {
    /// `(p;t)_{n+1}`, the form that holds.
    Corrected,
    /// `(t;q)_{n+1}`, as commonly printed; already wrong at `u^0`.
    Printed,
}

fn gessel_lhs(group: Group, caps: Caps, form: GesselDenominator) -> Result<Series> {
    let ucap = caps.get(Var::U).ok_or(Error::Uncapped(Var::U))?;
    let mut lhs = Series::zero(caps);
    for n in 0..=ucap {
        let mut den = match form {
            GesselDenominator::Corrected => poch(1, &[(Var::P, 1)], &[(Var::T, 1)], n + 1, caps),
            GesselDenominator::Printed => poch(1, &[(Var::T, 1)], &[(Var::Q, 1)], n + 1, caps),
        };
        let signs = match group {
            Group::A => None,
            Group::B => Some(n),
            Group::D => Some(n.saturating_sub(1)),
        };
        if let Some(k) = signs {
            den = den
                * poch(
                    -1,
                    &[(Var::T, 1), (Var::Q, 1), (Var::P, 1)],
                    &[(Var::T, 1), (Var::Q, 1)],
                    k,
                    caps,
                );
        }
        let fact = q_factorial(n).truncate(caps).invert()?;
        let term = joint_gf(group, n as usize, true).truncate(caps) * den.invert()? * fact;
        lhs = lhs + term.shift(Monomial::ONE.with(Var::U, n));
    }
    Ok(lhs)
}

/// `Σ_{k <= p cap} p^k e[u]_q e[tu]_q ... e[t^k u]_q`.
fn gessel_rhs(caps: Caps) -> Result<Series> {
    let pcap = caps.get(Var::P).ok_or(Error::Uncapped(Var::P))?;
    let mut rhs = Series::zero(caps);
    let mut product = Series::one(caps);
    for k in 0..=pcap {
        let arg = Monomial::of(&[(Var::T, k), (Var::U, 1)]);
        product = product * q_exponential(arg, caps)?;
        rhs = rhs + product.shift(Monomial::ONE.with(Var::P, k));
    }
    Ok(rhs)
}

fn gessel(c: &mut Checker, params: &VerifyParams, group: Group) -> Result<()> {
    let caps = required_caps(c, params, &[Var::U, Var::T, Var::Q, Var::P])?;
    let lhs = gessel_lhs(group, caps, GesselDenominator::Corrected)?;
    let rhs = gessel_rhs(caps)?;
    c.series(
        || alloc::format!("{group} Gessel series, caps {caps}"),
        &lhs,
        &rhs,
    );
    let printed = gessel_lhs(group, caps, GesselDenominator::Printed)?;
    c.notes.push(match printed.first_difference(&rhs) {
        Some((m, a, b)) => alloc::format!(
            "left side divides by (p;t)_(n+1); with (t;q)_(n+1) instead the coefficients of {m} differ: {a} vs {b}"
        ),
        None => "left side divides by (p;t)_(n+1); the (t;q)_(n+1) form also agrees within these caps".into(),
    });
    Ok(())
}
