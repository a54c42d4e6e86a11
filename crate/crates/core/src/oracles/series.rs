//! Direct summation of the defining series of `Phi(z,s,nu)` and `B(nu,0,z)`.

use num_complex::Complex64;

use super::{EvalResult, OracleMethod};
use crate::error::{Error, Result};
use crate::rational::{decompose_neg, RationalNu};
use crate::reduction::principal_pow;
use crate::sum::NeumaierSum;

/// Truncation policy for the series oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    rel_tol: f64,
    max_terms: u64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy { rel_tol: 1e-16, max_terms: 10_000_000 }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, max_terms: u64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) || max_terms < 1 {
            return Err(Error::InvalidParameter(format!(
                "series policy needs 0 < relTol < 1 and maxTerms >= 1, got {rel_tol}, {max_terms}"
            )));
        }
        Ok(SeriesPolicy { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Terms `z^k / (k + nu)^s`, k = 0, 1, 2, ...
///
/// Powers of `z` are built by repeated multiplication; `(k + nu)^s` is taken
/// on the principal branch when `k + nu < 0`.
pub fn lerch_series_terms(z: Complex64, s: f64, nu: f64) -> impl Iterator<Item = Complex64> {
    let mut power = Complex64::new(1.0, 0.0);
    (0u64..).map(move |k| {
        let base = k as f64 + nu;
        let term = if s == 1.0 {
            power / base
        } else if base > 0.0 {
            power / base.powf(s)
        } else {
            power / Complex64::new(base, 0.0).powf(s)
        };
        power *= z;
        term
    })
}

/// `Phi(z,s,nu) = sum_{k>=0} z^k / (k+nu)^s` for `|z| < 1`.
///
/// Stops once three consecutive terms are below `rel_tol` times the partial
/// sum. The error estimate is the geometric tail bound `|last| / (1 - |z|)`
/// plus an accumulated rounding term for the repeated-multiplication powers.
pub fn lerch_series(z: Complex64, s: f64, nu: f64, policy: &SeriesPolicy) -> Result<EvalResult> {
    let modulus = z.norm();
    if !(modulus < 1.0) {
        return Err(Error::OutsideDomain(format!("series needs |z| < 1, got |z| = {modulus}")));
    }
    if !nu.is_finite() || is_nonpositive_integer(nu) {
        return Err(Error::DivergentParameter(nu.to_string()));
    }
    if !(s.is_finite()) {
        return Err(Error::InvalidParameter(format!("s = {s} is not finite")));
    }

    let mut acc = NeumaierSum::new();
    let mut rounding = 0.0;
    let mut small_run = 0;
    let mut last = 0.0;
    let mut count = 0u64;
    for (k, term) in lerch_series_terms(z, s, nu).enumerate() {
        if count >= policy.max_terms {
            return Err(Error::MaxTermsExceeded(policy.max_terms));
        }
        count += 1;
        acc.add(term);
        last = term.norm();
        rounding += (k as f64 + 2.0) * last;
        if last <= policy.rel_tol * acc.value().norm() {
            small_run += 1;
            if small_run == 3 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    Ok(EvalResult {
        value: acc.value(),
        method: OracleMethod::Series,
        error_estimate: last / (1.0 - modulus) + f64::EPSILON * rounding,
        terms_or_nodes: count,
    })
}

/// `B(nu,0,z)` by direct summation.
///
/// `nu > 0`: `z^nu sum_{k>=0} z^k/(k+nu)`. `nu = -n + r < 0`: the positive
/// series `sum_{k>=0} z^{k+r}/(k+r)` plus the finite part
/// `sum_{k=1}^{n} z^{r-k}/(r-k)`.
pub fn beta_series(nu: &RationalNu, z: Complex64, policy: &SeriesPolicy) -> Result<EvalResult> {
    if nu.is_nonpositive_integer() {
        return Err(Error::DivergentParameter(nu.to_string()));
    }
    if z == Complex64::new(0.0, 0.0) {
        if nu.is_positive() {
            return Ok(EvalResult { value: z, method: OracleMethod::Series, error_estimate: 0.0, terms_or_nodes: 1 });
        }
        return Err(Error::ZeroArgument);
    }
    if nu.is_positive() {
        let phi = lerch_series(z, 1.0, nu.to_f64(), policy)?;
        let prefactor = principal_pow(z, nu)?;
        let value = prefactor * phi.value;
        return Ok(EvalResult {
            value,
            method: OracleMethod::Series,
            error_estimate: prefactor.norm() * phi.error_estimate + 4.0 * f64::EPSILON * value.norm(),
            terms_or_nodes: phi.terms_or_nodes,
        });
    }

    let dec = decompose_neg(nu)?;
    let r = dec.p() as f64 / dec.q() as f64;
    let phi = lerch_series(z, 1.0, r, policy)?;
    let z_r = z.powf(r);
    let mut acc = NeumaierSum::new();
    acc.add(z_r * phi.value);
    let z_inv = z.inv();
    let mut power = z_r;
    let mut magnitude = 0.0;
    for k in 1..=dec.n() {
        power *= z_inv;
        let term = power / (r - k as f64);
        magnitude += (k as f64 + 2.0) * term.norm();
        acc.add(term);
    }
    let value = acc.value();
    Ok(EvalResult {
        value,
        method: OracleMethod::ShiftedSeries,
        error_estimate: z_r.norm() * phi.error_estimate + f64::EPSILON * (magnitude + 4.0 * value.norm()),
        terms_or_nodes: phi.terms_or_nodes + dec.n(),
    })
}
