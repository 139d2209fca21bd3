use thiserror::Error;

/// Errors produced by the quantization kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The Jacobi eigensolver did not reach its off-diagonal threshold.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    /// A matrix expected to be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    /// A characteristic polynomial expected to be real carries imaginary residue.
    #[error("characteristic polynomial has non-real coefficients (imaginary residue {0:e})")]
    ComplexCoefficients(f64),

    /// A row of a moduli scan failed; the offending angle is kept.
    #[error("scan aborted at delta = {delta}: {source}")]
    Scan {
        delta: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
