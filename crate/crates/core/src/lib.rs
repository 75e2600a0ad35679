//! Exact base statistics for permutation groups, with a focus on the actions of
//! projective linear groups on subspaces of `F_q^d`.
//!
//! Everything here is `no_std` (with `alloc`); IO and the command line live in
//! the `irrbase` crate.

#![no_std]

extern crate alloc;

pub mod chain;
pub mod field;
pub mod lab;
pub mod matrix;
pub mod perm;
pub mod projective;
pub mod stats;

pub use chain::{contains, group_order, pointwise_stabilizer, stabilizer_chain, StabilizerChain};
pub use field::{gl_order, FieldError, FieldSpec, Fq};
pub use matrix::{gl_generators, FqMatrix, MatrixError};
pub use perm::{orbit, Orbit, Perm, PermError, PermGroup};
pub use projective::{
    build_action, build_pair_action, enumerate_subspaces, gaussian_binomial, subspace_image, ActionError, ActionTable,
    LinearKind, PairKind, Subspace, Transform,
};
