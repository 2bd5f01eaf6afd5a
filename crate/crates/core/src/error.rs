use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a bijection of {{1..{degree}}}")]
    NotBijection { degree: usize },

    #[error("cycle parse error: {0}")]
    Parse(String),

    #[error("catalog line {line}: {message}")]
    CatalogLine { line: usize, message: String },

    #[error("group {name}: built order {built} but expected {expected}")]
    OrderMismatch { name: String, built: String, expected: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: String, bound: u64 },

    #[error("tuple budget exceeded: {needed} tuples > {budget}")]
    TupleBudget { needed: String, budget: u64 },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("trivial group has no minimal normal subgroups")]
    TrivialGroup,

    #[error("lattice does not belong to this group")]
    LatticeMismatch,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("action does not preserve the poset: {0}")]
    ActionNotPreserving(String),

    #[error("conjugator does not normalize the group")]
    NotNormalizing,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("prime field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },
}
