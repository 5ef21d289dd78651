//! Exact computations on the Brieskorn module `B(f)` of a homogeneous
//! polynomial `f`: graded dimensions of `M(f)`, `B(f)`, `C(f)`, `t`-torsion
//! orders decided by exact linear systems, and replayable witness
//! certificates.

pub mod brieskorn;
pub mod error;
pub mod exactla;
pub mod exterior;
pub mod polyring;

pub use error::{Error, Result};
