//! Unitarily invariant matrix norms, a Herglotz-class functional calculus, and
//! randomized checkers for norm inequalities involving `f(A)` for matrices with
//! spectrum in the open unit disk.

pub mod error;
pub mod harness;
pub mod herglotz;
pub mod ineq;
pub mod matcore;
pub mod norms;
pub mod spectral;

pub use error::{Error, Result};
pub use herglotz::HerglotzFunction;
pub use ineq::{IneqReport, Sign, Tolerance};
pub use matcore::{CMatrix, C64};
pub use norms::NormKind;
pub use spectral::SpectralDecomposition;
