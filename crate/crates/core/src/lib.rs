//! Exact computations for simple admissible weight modules of current
//! algebras `𝔤 ⊗ S`: root combinatorics, weight multiplicities, evaluation
//! modules, the admissibility criterion and isomorphism labels.

pub mod admissible;
pub mod battery;
pub mod classify;
pub mod error;
pub mod evaluation;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod shadow;
pub mod ucext;
pub mod weightmod;

pub use error::{Error, Result};
