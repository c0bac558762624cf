//! Setoid model of extensional type theory over iterative (Aczel) sets.

pub mod error;
pub mod harness;
pub mod interp;
pub mod setoid;
pub mod syntax;
pub mod universe;
pub mod zf;

pub use error::{Error, Result};
