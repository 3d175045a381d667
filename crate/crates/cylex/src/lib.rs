//! Exact operator calculus for cyclic, paracyclic and cylindrical modules.
//!
//! The crate represents a paracyclic module truncated at a finite degree as a
//! family of sparse matrices over an exact field (the rationals or a prime
//! field), and machine-verifies the structural identities these families must
//! satisfy: the simplicial and cyclic relations, mixed-complex identities for
//! the Hochschild boundary `b` and the degree-raising `B`, the cylindrical
//! compatibility between commuting horizontal and vertical structures, and
//! the comparison between the total and diagonal complexes of a cylindrical
//! module by shuffle and Alexander-Whitney maps, a deformation retract, and
//! the homological perturbation lemma. Cyclic and Hochschild homology are
//! computed exactly as kernel/image dimension counts, with an independent
//! Connes-style quotient-complex oracle over the rationals.
//!
//! Start with the runnable examples (`cargo run --example ez_theorem`) or the
//! [`catalog`] of bundled modules.

// Index-based loops mirror the degree and bidegree bookkeeping of the
// operator formulas throughout.
#![allow(clippy::needless_range_loop, clippy::explicit_counter_loop)]

pub mod catalog;
pub mod constructors;
pub mod convention;
pub mod cylindrical;
pub mod ez;
pub mod job;
pub mod matrix;
pub mod mixed;
pub mod normalize;
pub mod report;
pub mod scalar;
pub mod simplicial;

pub use matrix::{Matrix, Subspace, Vector};
pub use report::{Check, Report, Status};
pub use scalar::{FieldSpec, Scalar};
