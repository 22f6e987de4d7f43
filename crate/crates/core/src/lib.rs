//! Dense bipartite quantum states: correlation measures, discord,
//! entanglement tests and the two-detector X-state model.

// `!(x > 0.0)` is used on purpose to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod density;
pub mod detector;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod states;
pub mod verify;

pub use density::{BipartiteState, DensityMatrix, PureVector, Subsystem};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
