//! Exact-arithmetic homology of moment-angle complexes over prime fields.
//!
//! Given a finite simplicial complex `K` on `{1, ..., m}` and a prime `p`,
//! this crate computes the bigraded Hochster table of `H_*(Z_K; GF(p))`,
//! certifies or refutes `GF(p)`-tightness by three cross-validating methods,
//! and computes poset cohomology / double homology together with the rank
//! duality satisfied by tight triangulations of closed orientable manifolds.

pub mod complex;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod hochster;
pub mod homology;
pub mod linalg;
pub mod poset;
pub mod tightness;

pub use complex::{SimplicialComplex, SubsetLattice, VertexSet};
pub use error::{Error, Result};
pub use linalg::{FieldMatrix, PrimeField};

/// Default cap on the vertex count of any `2^m` sweep.
pub const DEFAULT_M_CAP: u32 = 24;
