//! Exact computation of Ext² between the Weyl modules of the hook (a, 1^b)
//! and the two-row shape (a+1, b−1) over the integers.

pub mod cli;
pub mod combinatorics;
pub mod dpa;
pub mod error;
pub mod ext;
pub mod intlin;
pub mod oracle;
pub mod pipeline;
pub mod presentation;
pub mod weyl;

pub use error::{Error, Result};
