//! Exact solver and certificate engine for quaternion unit equations
//! `a·f·a' + b·g·b' = 1` over finitely generated semigroups.

pub mod baker;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod quat;
pub mod realalg;
pub mod report;
pub mod semigroup;
pub mod solver;

pub use error::{Error, Result};
