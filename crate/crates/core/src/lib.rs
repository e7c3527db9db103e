//! Exact verification of semisimple character expansions for depth-zero
//! supercuspidal representations of `SL(2)` over a p-adic field.
//!
//! Both sides of the expansion are evaluated as exact elements of `Q(g)`,
//! where `g` is the quadratic Gauss sum, at the standard representatives
//! `Y_{z,n}(u)` of the invariant sets of topologically nilpotent elements.

pub mod engine;
pub mod error;
pub mod exact;
pub mod finite;
pub mod fourier;
pub mod labels;
pub mod oracle;
pub mod padic;
pub mod suites;
pub mod tables;

pub use error::{Error, Result};
