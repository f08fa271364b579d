//! Solvers for single-task-robot / multi-robot-task instantaneous assignment
//! under a total, per-task, or per-robot cost budget.

pub mod approx;
pub mod error;
pub mod exact;
pub mod instances;
pub mod matching;
pub mod model;
pub mod polycases;

pub use error::{Error, Result};
pub use model::*;
