use thiserror::Error;

/// Which hypothesis of a construction failed to hold on the given input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    Sublattice,
    Convexity,
    Retraction,
    Agreement,
    Embedding,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::Sublattice => "sublattice",
            Hypothesis::Convexity => "convexity",
            Hypothesis::Retraction => "retraction",
            Hypothesis::Agreement => "agreement",
            Hypothesis::Embedding => "embedding",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a lattice: {0} and {1} have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("empty factor list")]
    EmptyFactorList,
    #[error("empty list")]
    EmptyList,
    #[error("empty seed set")]
    EmptySeed,
    #[error("empty index set")]
    EmptyIndexSet,
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("map is not isotone: {0} <= {1} but images are not ordered")]
    NotIsotoneInput(String, String),
    #[error("map is not a join-homomorphism at ({0}, {1})")]
    NotJoinHom(String, String),
    #[error("element {0} has an image not above the proposed lower bound")]
    NotLowerBound(String),
    #[error("dimension {0} out of range 1..=3")]
    DimensionOutOfRange(usize),
    #[error("map is not a lattice embedding: {0}")]
    NotAnEmbedding(String),
    #[error("label {0} occurs in both summands")]
    LabelClash(String),
    #[error("lattice is not Boolean")]
    NotBoolean,
    #[error("lattice too small (needs more than two elements)")]
    TooSmall,
    #[error("codomain is not distributive")]
    NotDistributiveCodomain,
    #[error("complement joins are not constant: {0}")]
    ConstancyViolated(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("element is a bound (0 or 1) of the Boolean lattice")]
    BoundsElement,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("mismatched input: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
