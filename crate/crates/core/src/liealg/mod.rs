//! Simple Lie algebras, diagram automorphisms, eigenspace gradings and the
//! Lie torus axioms.

pub mod algebra;
pub mod automorphism;
pub mod check;
pub mod grading;
pub mod rootsys;

pub use algebra::{AlgebraJson, LieAlgebra};
pub use automorphism::{Automorphism, AutomorphismTuple, SigmaSpec};
pub use grading::{Grading, Weight0};
pub use check::{check_condition_m, check_lie_torus, minimal_dominant_weights, LieTorusReport};
pub use rootsys::{CartanType, RootSystem};
