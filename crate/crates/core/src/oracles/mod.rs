//! Independent reference evaluations: direct series summation and adaptive
//! quadrature of the integral representations. None of these share code
//! with the reduction formulas beyond the principal power `z^nu`.

pub mod quadrature;
pub mod series;

use num_complex::Complex64;

pub use quadrature::{adaptive_gk21, beta_quadrature, phi_quadrature, Quadrature};
pub use series::{beta_series, lerch_series, lerch_series_terms, SeriesPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleMethod {
    Series,
    ShiftedSeries,
    QuadratureBeta,
    QuadraturePhi,
}

impl OracleMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleMethod::Series => "Series",
            OracleMethod::ShiftedSeries => "ShiftedSeries",
            OracleMethod::QuadratureBeta => "QuadratureBeta",
            OracleMethod::QuadraturePhi => "QuadraturePhi",
        }
    }
}

/// Oracle value with an a-posteriori absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub method: OracleMethod,
    pub error_estimate: f64,
    pub terms_or_nodes: u64,
}
