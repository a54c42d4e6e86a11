use thiserror::Error;

/// Errors raised by parsing, reduction, oracle and benchmark routines.
///
/// The `Display` form always starts with the variant name so command-line
/// diagnostics can be matched on a stable token.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ParseError: {0}")]
    Parse(String),

    #[error("ZeroDenominator: denominator of {0:?} is zero")]
    ZeroDenominator(String),

    #[error("Overflow: {0} does not fit in 64-bit numerator/denominator")]
    Overflow(String),

    #[error("DivergentParameter: nu = {0} is a non-positive integer")]
    DivergentParameter(String),

    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),

    #[error("BranchPoint: {0}")]
    BranchPoint(String),

    #[error("ZeroArgument: z = 0 is not allowed here")]
    ZeroArgument,

    #[error("PoleInSum: k + nu = 0 at k = {0}")]
    PoleInSum(u64),

    #[error("OutsideDomain: {0}")]
    OutsideDomain(String),

    #[error("MaxTermsExceeded: series did not converge within {0} terms")]
    MaxTermsExceeded(u64),

    #[error("QuadratureNonConvergence: error estimate {estimate:e} above target {target:e}")]
    QuadratureNonConvergence { estimate: f64, target: f64 },

    #[error("ResidualImaginary: imaginary part {imag:e} of a real integral (value {value:e})")]
    ResidualImaginary { value: f64, imag: f64 },

    #[error("NonFinite: {0}")]
    NonFinite(String),

    #[error("BenchDisagreement: {method} at nu = {nu}, z = {z} differs from reduction by {rel:e} relative")]
    BenchDisagreement {
        method: String,
        nu: String,
        z: String,
        rel: f64,
    },

    #[error("BenchFailure: {method} at nu = {nu}, z = {z}: {source}")]
    BenchFailure {
        method: String,
        nu: String,
        z: String,
        source: Box<Error>,
    },
}

impl Error {
    /// Stable variant name, used as the `reason` column of verification output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::ZeroDenominator(_) => "ZeroDenominator",
            Error::Overflow(_) => "Overflow",
            Error::DivergentParameter(_) => "DivergentParameter",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::BranchPoint(_) => "BranchPoint",
            Error::ZeroArgument => "ZeroArgument",
            Error::PoleInSum(_) => "PoleInSum",
            Error::OutsideDomain(_) => "OutsideDomain",
            Error::MaxTermsExceeded(_) => "MaxTermsExceeded",
            Error::QuadratureNonConvergence { .. } => "QuadratureNonConvergence",
            Error::ResidualImaginary { .. } => "ResidualImaginary",
            Error::NonFinite(_) => "NonFinite",
            Error::BenchDisagreement { .. } => "BenchDisagreement",
            Error::BenchFailure { .. } => "BenchFailure",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
