use thiserror::Error;

use crate::recognition::ChordalityCertificate;

/// Crate-wide error type. Every fallible operation reports through this enum
/// so the CLI can map failures to structured one-line messages uniformly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {location}: {message}")]
    Syntax { location: String, message: String },

    #[error("loop edge {vertex}-{vertex} is not allowed in a simplicial graph")]
    LoopEdge { vertex: String },

    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: String, v: String },

    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("invalid label {0:?}: labels must match [A-Za-z0-9_]+")]
    InvalidLabel(String),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {vertices} vertices, above the enumeration cap {cap}")]
    AboveCap { vertices: usize, cap: usize },

    #[error("input graph is not a tree: {0}")]
    NotATree(String),

    #[error("input graph is not chordal")]
    NotChordal(ChordalityCertificate),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("relator uses undeclared generator {0}")]
    UndeclaredGenerator(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("character is not surjective: every generator maps to 0 mod p")]
    NonSurjectiveCharacter,

    #[error("integer overflow while combining exponents")]
    ExponentOverflow,

    #[error("invalid graph of groups: {0}")]
    InvalidGraphOfGroups(String),
}

pub type Result<T> = std::result::Result<T, Error>;
