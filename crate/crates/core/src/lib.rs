//! Exact verification, construction and search of Durfee systems, and the
//! character identities built from them.

pub mod catalog;
pub mod error;
pub mod identities;
pub mod lattice;
pub mod matrix;
pub mod partitions;
pub mod qseries;
pub mod rational;
pub mod search;
pub mod series;
pub mod system;
pub mod ucpf;

pub use error::{Error, Result};
pub use matrix::RationalMatrix;
pub use qseries::{Bound, Ctx};
pub use rational::Rat;
pub use series::{Discrepancy, Series, ZMonomial};
pub use system::{DurfeeSystem, Sector};
