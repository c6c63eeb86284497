pub mod braid;
pub mod checks;
pub mod cli;
pub mod error;
pub mod esystem;
pub mod field;
pub mod invariant;
pub mod trace;
pub mod yalgebra;

pub use error::{Error, Result};
