use thiserror::Error;

/// Errors raised by the numerical kernel, state constructors and model engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: max anti-Hermitian component {max_deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { max_deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below -{tolerance:.1e}")]
    NotPositive { eigenvalue: f64, tolerance: f64 },

    #[error("trace {trace:.12} differs from 1 by more than {tolerance:.1e}")]
    BadTrace { trace: f64, tolerance: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("Bloch vector norm {norm:.12} exceeds 1")]
    UnphysicalBloch { norm: f64 },

    #[error("reference state is rank deficient (min eigenvalue {min_eigenvalue:.3e}); regularize it before using the fixed-point form")]
    RankDeficient { min_eigenvalue: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{0}")]
    Statistics(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
