//! Exact verification of non-Archimedean Welch-type bounds over `Q(t)`,
//! together with the classical real/complex packing bounds and small
//! extremal-configuration searches.

pub mod classical;
pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
mod modp;
pub mod search;
pub mod symtensor;
pub mod welch;

pub use error::{Error, Result};
