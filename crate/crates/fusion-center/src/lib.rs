//! Numerical toolkit for unitary fusion categories presented skeletally.
//!
//! A category is given by fusion rules, a table of F-symbols and pivotal
//! phases. On top of that data the crate builds the morphism calculus, the
//! regular half-braiding and its fusion-algebra representation, positivity
//! tests for multipliers, amenability bounds for fusion rings, and the
//! machinery of Q-systems with Schauenburg induction.

pub mod catalog;
pub mod center;
pub mod cli;
pub mod fusion_ring;
pub mod linalg;
pub mod multipliers;
pub mod qsystems;
pub mod report;
pub mod skeleton;

pub use num_complex::Complex64 as C64;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
