//! Cohomology of finite and topological quandles.

pub mod algebra;
pub mod certificates;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod geometry;
pub mod limits;
pub mod quandle;

pub use error::{Error, Result};
