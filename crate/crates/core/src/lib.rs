//! Finite semirings, semimodules and linear maps, with decision procedures
//! for normality, exactness and relative injectivity.

pub mod algebra;
pub mod error;
pub mod injectivity;
pub mod limits;
pub mod matrix;
pub mod morphism;
pub mod report;
pub mod sequence;

pub use error::{Error, Result};
pub use limits::Limits;
pub use report::{Report, Verdict, Witness};
