//! Closed forms of two integral families through the reduction engine:
//!
//! ```text
//! int_0^1 t^{nu-1} / (1 - z t) dt = int_0^inf e^{-(nu-1)t} / (e^t - z) dt = z^{-nu} B(nu,0,z)
//! int_0^z tanh^{2 lambda - 1}(t) dt = B(lambda, 0, tanh^2 z) / 2
//! ```

use num_complex::Complex64;

use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::rational::{decompose_pos, RationalNu};
use crate::reduction::{beta_pos_dd, lerch_dd, Route};

/// Arguments with `tanh^2 z` this close to 1 are refused as branch points.
pub const TANH_SATURATION: f64 = 1e-15;

/// Relative size of the imaginary part tolerated in a real integral.
pub const RESIDUAL_IMAG_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralFamily {
    PowerOverLinear,
    ExpOverExpMinusZ,
    TanhPower,
}

/// One member of an integral family. `exponent` is `nu` or `lambda`;
/// `z` is the parameter, or the upper limit for [`IntegralFamily::TanhPower`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSpec {
    pub family: IntegralFamily,
    pub exponent: RationalNu,
    pub z: Complex64,
}

impl IntegralSpec {
    pub fn evaluate(&self) -> Result<Complex64> {
        match self.family {
            IntegralFamily::PowerOverLinear | IntegralFamily::ExpOverExpMinusZ => {
                int_power_over_linear(&self.exponent, self.z)
            }
            IntegralFamily::TanhPower => {
                if self.z.im != 0.0 {
                    return Err(Error::OutsideDomain("tanh integral needs a real upper limit".into()));
                }
                int_tanh_power(&self.exponent, self.z.re).map(|v| Complex64::new(v, 0.0))
            }
        }
    }
}

/// `int_0^1 t^{nu-1}/(1 - z t) dt` for rational `nu > 0`, equal to
/// `int_0^inf e^{-(nu-1)t}/(e^t - z) dt` and to `z^{-nu} B(nu,0,z)`.
pub fn int_power_over_linear(nu: &RationalNu, z: Complex64) -> Result<Complex64> {
    if !nu.is_positive() {
        return Err(Error::InvalidParameter(format!("nu = {nu} must be positive")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::OutsideDomain(format!("z = {z} is not finite")));
    }
    let value = lerch_dd(&decompose_pos(nu)?, Cdd::from(z))?.to_c64();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("power-over-linear integral overflowed".into()))
    }
}

/// `int_0^z tanh^{2 lambda - 1}(t) dt` for rational `lambda > 0` and real `z > 0`.
///
/// Goes through the complex reduction at `tanh^2 z` and refuses results whose
/// imaginary part does not vanish.
pub fn int_tanh_power(lambda: &RationalNu, z: f64) -> Result<f64> {
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} must be positive")));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::OutsideDomain(format!("upper limit z = {z} must be positive")));
    }
    if z.tanh().powi(2) >= 1.0 - TANH_SATURATION {
        return Err(Error::BranchPoint(format!("tanh^2({z}) rounds to 1")));
    }
    let e = Dd::from(2.0 * z).exp();
    let t = (e - Dd::from(1.0)) / (e + 1.0);
    let u = t * t;
    let (b, _) = beta_pos_dd(&decompose_pos(lambda)?, Cdd::from(u), Route::Auto)?;
    let b = b.to_c64();
    let value = 0.5 * b.re;
    if b.im.abs() > RESIDUAL_IMAG_TOL * value.abs() {
        return Err(Error::ResidualImaginary { value, imag: 0.5 * b.im });
    }
    Ok(value)
}
