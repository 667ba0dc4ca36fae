//! Exact combinatorics on the signed permutation groups `S_n`, `B_n` and `D_n`.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`perm`]: signed permutations in window notation and descent sets,
//! * [`stats`]: inversion, major index, the negative statistics and both Coxeter lengths,
//! * [`series`] and [`qanalog`]: a truncated sparse power-series ring in `u, t, q, p`
//!   over big integers, with q-integers, q-multinomials and Pochhammer products,
//! * [`group`] and [`classes`]: enumeration of the groups, their increasing quotients,
//!   and descent classes built both by filtering and from shuffle blocks,
//! * [`gf`] and [`verify`]: generating functions, closed forms and identity checks.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classes;
pub mod error;
pub mod gf;
pub mod group;
pub mod perm;
pub mod qanalog;
pub mod series;
pub mod stats;
pub mod verify;

pub use classes::{
    bar_map, chain_blocks, construct_class, des_d_tabulation, descent_class_blocks_b,
    descent_class_blocks_d, descent_class_filter, expand_shuffles, phi_map, CaseTag,
    DescentClassSpec, Flavor, Mode, Parity, ShuffleBlock,
};
pub use error::{Error, Result};
pub use gf::{
    b_dlen_by_r_sum, closed_form_a, closed_form_b, closed_form_b_dlen, closed_form_d, gf,
    poincare_oracle,
};
pub use group::{factor_quotient, iter_group, quotient_increasing, Group};
pub use perm::{DescentSet, SignedPermutation};
pub use series::{Caps, Monomial, Series, Term, Var};
pub use stats::{fmaj, statistics, StatKey, StatisticBundle};
pub use verify::{verify, IdentityId, Outcome, Status, VerifyParams, Witness};
