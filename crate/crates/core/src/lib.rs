pub mod catalog;
pub mod cli;
pub mod error;
pub mod lie_core;
pub mod matrix;
pub mod prolongation;
pub mod rep_algebra;
pub mod tv_space;

pub use error::{Error, Result};
