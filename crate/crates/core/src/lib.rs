//! Exact computations for graded Lie tori, their universal central
//! extensions and level-zero integrable modules.

pub mod error;
pub mod scalars;

pub use error::{Error, Result};
pub mod liealg;
pub mod torus;
pub mod repmod;
pub mod loopmod;
pub mod config;
pub mod selftest;
