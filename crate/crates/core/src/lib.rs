//! Represented matroids over small prime fields, Dowling geometries, frame templates and
//! brute-force extremal search.

pub mod error;
pub mod gf;

pub use error::{Error, Result};
pub mod budget;
pub mod matroid;

pub use budget::Budget;
pub mod frames;
pub mod search;
pub mod templates;
