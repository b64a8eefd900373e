use thiserror::Error;

use crate::complex::VertexSet;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} appears in no facet")]
    GhostVertex { vertex: u32 },

    #[error("vertex {vertex} outside 1..={m}")]
    VertexOutOfRange { vertex: u32, m: u32 },

    #[error("empty facet not allowed")]
    EmptyFacet,

    #[error("complex must have at least one vertex")]
    NoVertices,

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(VertexSet),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("modulus {0} out of supported range 2..2^31")]
    ModulusOutOfRange(u32),

    #[error("matrix columns are linearly dependent")]
    DependentColumns,

    #[error("chain is not a cycle in degree {degree}")]
    NotACycle { degree: i32 },

    #[error("complex is not pure")]
    NotPure,

    #[error("complex is not a closed homology manifold over GF({p})")]
    NotAManifold { p: u32 },

    #[error("complex is not orientable over GF({p})")]
    NotOrientable { p: u32 },

    #[error("vertex count {m} exceeds the configured cap {cap}")]
    BudgetExceeded { m: u32, cap: u32 },

    #[error("functor square at J={j}, x={x}, y={y} does not commute")]
    NonCommutingFunctor { j: VertexSet, x: u32, y: u32 },

    #[error("inclusion components are not injective at J={0}")]
    NotASubfunctor(VertexSet),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
