use thiserror::Error;

use crate::halfint::HalfInt;

/// Indices in messages are 1-based; the fields themselves are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse half-integer {0:?}: expected \"k\" or \"k/2\"")]
    ParseHalfInt(String),
    #[error("invalid component: length m must be positive, got {0}")]
    InvalidComponent(i64),
    #[error("invalid segment [{b}, {e}]: need b >= e with b - e an integer")]
    InvalidSegment { b: HalfInt, e: HalfInt },
    #[error("a parameter needs at least one segment")]
    EmptyParameter,
    #[error(
        "segments {} and {} mix integral and half-integral entries",
        .first + 1,
        .second + 1
    )]
    MixedIntegrality { first: usize, second: usize },
    #[error("parity violation at segment {}: a + m = {sum} is not congruent to n = {n} mod 2", .index + 1)]
    ParityViolation { index: usize, sum: i64, n: i64 },
    #[error(
        "reference order is not admissible: segment {} precedes the earlier segment {}",
        .later + 1,
        .earlier + 1
    )]
    InadmissibleOrder { earlier: usize, later: usize },
    #[error("invalid index pair ({}, {})", .0 + 1, .1 + 1)]
    InvalidPair(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation {0} is not admissible")]
    InadmissiblePermutation(String),
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("{what} is limited to r <= {bound}, got r = {r}{hint}")]
    ResourceLimit {
        what: &'static str,
        bound: usize,
        r: usize,
        hint: &'static str,
    },
    #[error(
        "cannot swap positions {} and {}: the segments there are in precedence",
        .position + 1,
        .position + 2
    )]
    InvalidSwap { position: usize },
    #[error("entry {value} at position {} lies outside [0, {m}]", .position + 1)]
    ZeroParameter { position: usize, value: i64, m: i64 },
    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),
    #[error("rank {rank} outside [0, {n}]")]
    RankOutOfRange { rank: i64, n: i64 },
    #[error("l at segment {} is {l}, above half the length {m}", .index + 1)]
    ExtendedOutOfRange { index: usize, l: i64, m: i64 },
    #[error("sign undefined: l at segment {} is {l} < 0", .index + 1)]
    UndefinedSign { index: usize, l: i64 },
    #[error("segment {} has negative end {e}; p-adic comparison needs every end >= 0", .index + 1)]
    OutOfDomain { index: usize, e: HalfInt },
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),
    #[error("parameter gives the zero module; {0} is undefined")]
    UndefinedInvariant(&'static str),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    ResourceLimit,
    Invariant,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ResourceLimit { .. } => ErrorClass::ResourceLimit,
            Error::InvariantViolation(_) => ErrorClass::Invariant,
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
