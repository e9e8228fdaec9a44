//! Cyclotomic scalars and exact linear algebra.

pub mod cyclotomic;
pub mod lattice;
pub mod matrix;
mod serde_impl;
pub use serde_impl::qstr;

pub use lattice::IntLattice;
pub use cyclotomic::{euler_phi, q, q_frac, CycScalar, Q};
pub use matrix::{SpanResult, 
    simultaneous_eigenspace, ExactMatrix, SpanTracker, SparseMatrix, Subspace, Vector,
};
