use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),
    #[error("entry {from} -> {to} does not fit ring {ring}: {detail}")]
    RingMismatch {
        from: String,
        to: String,
        ring: String,
        detail: String,
    },
    #[error("unsupported ring {0} for this operation")]
    UnsupportedRing(String),
    #[error("differential is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("d^2 is nonzero: {0}")]
    NonZeroSquare(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("map is not a chain map: {0}")]
    NotAChainMap(String),
    #[error("morphism is not a cycle in the morphism complex")]
    MorphismNotACycle,
    #[error("class is not U-torsion")]
    NotTorsion,
    #[error("localized homology has rank {0}, expected 1")]
    TowerRank(usize),
    #[error("ill-typed algebra element: {0}")]
    IllTyped(String),
    #[error("type-D structure is not reduced: arrow {0} carries an idempotent")]
    Unreduced(String),
    #[error("odd Alexander grading at generator `{0}`")]
    OddAlexander(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
