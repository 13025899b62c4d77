use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range for {what} of size {size}")]
    OutOfRange {
        what: String,
        index: usize,
        size: usize,
    },
    #[error("duplicate element {0} in chain")]
    DuplicateElement(String),
    #[error("function is not total on its domain: {0}")]
    NotTotal(String),

    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("identity law fails at element {0}")]
    BadIdentity(usize),
    #[error("well-order must be a permutation starting with the identity")]
    BadWellOrder,
    #[error("word of length {length} exceeds truncation depth {depth}")]
    DepthOverflow { length: usize, depth: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("action identity axiom fails at element {0}")]
    IdentityAxiomFails(usize),
    #[error("action composition axiom fails at (m1={0}, m2={1}, a={2})")]
    CompositionFails(usize, usize, usize),
    #[error("objects are not over the same monoid")]
    MonoidMismatch,
    #[error("structures have incompatible signatures: {0}")]
    SignatureMismatch(String),
    #[error("order is not a total order on the carrier: {0}")]
    BadOrder(String),

    #[error("empty sequence has no head or suffixes")]
    EmptySequence,
    #[error("coalgebra is not Eilenberg-Moore (witness element {0})")]
    NotEMCoalgebra(usize),
    #[error("value has the wrong shape for this functor: {0}")]
    BadShape(String),
    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: String, name: String },

    #[error("parent map is not a rooted forest; cycle {0:?}")]
    NotAForest(Vec<usize>),
    #[error("structure value at element {0} is not a root path")]
    NotPathShaped(usize),

    #[error("map is not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("size {size} exceeds cap {cap} for {what}")]
    SizeOverflow { what: String, size: u128, cap: u128 },
    #[error("no chain witness found up to size {0}")]
    NoChainWitnessInBudget(usize),
    #[error("truncation too small at reduction step {step}: homogeneous chain shrank to {size} < {needed}")]
    TruncationTooSmall {
        step: usize,
        size: usize,
        needed: usize,
    },
    #[error("degree missing for ordering {0:?}")]
    IncompleteFiber(Vec<usize>),
    #[error("no result for ordering {0:?}")]
    MissingOrdering(Vec<usize>),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Overflows of the configured caps, as opposed to malformed input.
    pub fn is_cap_overflow(&self) -> bool {
        matches!(
            self,
            Error::SizeOverflow { .. }
                | Error::DepthOverflow { .. }
                | Error::NoChainWitnessInBudget(_)
                | Error::TruncationTooSmall { .. }
        )
    }

    pub(crate) fn overflow(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::SizeOverflow {
            what: what.into(),
            size,
            cap,
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn checked_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn ensure_cap(what: &str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::overflow(what, size, cap))
    } else {
        Ok(())
    }
}
