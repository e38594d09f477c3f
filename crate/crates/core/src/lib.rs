//! Quasi-normalizers and the relative weak approximate Haagerup-type
//! property for triples `H < K < G` of discrete groups.
//!
//! Groups are free groups `F_n` (Stallings folding backend), finite
//! permutation groups (explicit enumeration) and `Z^n` (lattice backend).

pub mod algebra;
pub mod cert;
pub mod coset;
pub mod group;
pub mod harmonic;
pub mod qn;
pub mod specfile;
pub mod sweep;

pub use group::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{path}:{line}:{column}: {message}")]
    SpecFile { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for input errors.
    pub const EXIT_CODE: i32 = 3;
}
