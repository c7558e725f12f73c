use thiserror::Error;

/// Errors raised by graph construction, ring arithmetic and the builders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("the zero character is not allowed here")]
    ZeroCharacter,

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("edge {u} -- {v}: {reason}")]
    InvalidEdge { u: String, v: String, reason: String },

    #[error("missing tuple value for vertex `{0}`")]
    MissingValue(String),

    #[error("invalid graph action: {0}")]
    InvalidAction(String),

    #[error("action is not registered for this graph: {0}")]
    UnregisteredAction(String),

    #[error("empty box: lo > hi in coordinate {0}")]
    EmptyBox(usize),

    #[error("box is not stable under action generator {generator}")]
    UnstableBox { generator: usize },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),

    #[error("reflection group exceeds enumeration cap {cap}; not of finite type?")]
    GroupTooLarge { cap: usize },

    #[error("invalid embedding datum: {0}")]
    InvalidDatum(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
