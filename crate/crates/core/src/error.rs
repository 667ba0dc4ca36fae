use alloc::string::String;

use crate::series::Var;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed window: {0}")]
    Syntax(String),
    #[error("entry {position} ({entry}): {reason}")]
    Entry {
        /// 1-based position inside the window.
        position: usize,
        entry: String,
        reason: &'static str,
    },
    #[error("empty window")]
    EmptyWindow,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("descent {member} is outside [0, {max}]")]
    DescentOutOfRange { member: i64, max: usize },
    #[error("malformed descent set: {0}")]
    DescentSyntax(String),
    #[error("descent set contains 0, which is not a descent of S_n")]
    ZeroInTypeA,
    #[error("{0} is not an element of {1}")]
    NotInGroup(String, &'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("parts sum to {got}, expected {expected}")]
    PartsSum { got: usize, expected: usize },
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("variable {0} has no cap; the result would be an infinite series")]
    Uncapped(Var),
    #[error("exact division left a nonzero remainder")]
    InexactDivision,
    #[error("statistic reaches {var}^{exponent}, beyond cap {cap}")]
    CapOverflow { var: Var, exponent: u32, cap: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("shuffle blocks are not a partition of [n]: {0}")]
    InvalidBlock(String),
}
