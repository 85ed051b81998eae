pub mod catalog;
pub mod classify;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod nlie;
pub mod scalar;
pub mod superspace;

pub use error::{Error, Result};
