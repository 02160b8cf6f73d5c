#![forbid(unsafe_code)]

pub mod cqcoding;
pub mod divergences;
pub mod error;
pub mod hypotest;
pub mod opalg;
pub mod sampling;

pub use error::{Error, Result};
