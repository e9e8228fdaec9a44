//! Highest weight modules, evaluation modules and module predicates.

pub mod eval;
pub mod hw;
pub mod oracle;

pub use eval::{algebra_dimension, monomial, spin, EvalModule, IntegrabilityReport, IrreducibilityReport};
pub use hw::HWModule;
pub use oracle::{weyl_dimension, Freudenthal};
