//! Loop modules `(V̄ ⊗ A, ρ(α))`, their component lattice and decomposition.

pub mod decompose;
pub mod lattice;
pub mod pipeline;
pub mod window;

pub use decompose::{decompose, grade_shift_isomorphic, interior_irreducible, Component, ComponentReport, Verdict};
pub use lattice::{component_lattice, ComponentLattice};
pub use window::{CentralReport, GradedSubspace, LoopWindow, WeylReport};
pub use pipeline::{verify_classification_instance, verify_instance, ClassificationReport, StageReport};
