use thiserror::Error;

/// Errors raised while building or relating finite structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a partial order: {0}")]
    NotAPoset(String),

    #[error("not monotone: {0}")]
    NotMonotone(String),

    #[error("vertex `{0}` has no loop to serve as its unit")]
    MissingUnit(String),

    #[error("contact table is not total: {0}")]
    PartialContact(String),

    #[error("transports are not parallel: {0}")]
    NotParallel(String),

    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),

    #[error("not a quantale: {0}")]
    NotAQuantale(String),

    #[error("not a V-transport: {0}")]
    NotAVTransport(String),

    #[error("not a V-category: {0}")]
    NotAVCategory(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
