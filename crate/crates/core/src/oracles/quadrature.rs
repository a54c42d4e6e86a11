//! Globally adaptive 21-point Gauss-Kronrod quadrature and the two integral
//! representations used as oracles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::{EvalResult, OracleMethod};
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Default relative tolerance of the oracle integrals.
pub const QUAD_REL_TOL: f64 = 1e-13;
const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Kronrod estimate on `[a, b]` with the QUADPACK error heuristic.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_k = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let abs_value = abs_k * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    error = error.max(50.0 * f64::EPSILON * abs_value);
    Segment { a, b, value, error, abs_value }
}

/// Result of [`adaptive_gk21`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
}

/// Integrates `f` over `[a, b]`, bisecting the interval with the largest
/// error estimate until the total estimate is below
/// `max(abs_tol, rel_tol * |I|)`.
pub fn adaptive_gk21<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature> {
    let first = gk21(&f, a, b);
    let mut heap = BinaryHeap::from([first]);
    let (mut value, mut error, mut abs_value) = (first.value, first.error, first.abs_value);
    let mut evaluations = 21u64;
    loop {
        if !(value.is_finite() && error.is_finite()) {
            return Err(Error::NonFinite("integrand produced a non-finite value".into()));
        }
        // Accumulated per-interval round-off floors count as converged.
        let target = abs_tol.max(rel_tol * value.abs()).max(100.0 * f64::EPSILON * abs_value);
        if error <= target {
            return Ok(Quadrature { value, error, evaluations });
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence { estimate: error, target });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // Re-sum to shed drift from the running updates.
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
            abs_value = heap.iter().map(|s| s.abs_value).sum();
        }
    }
}

/// `B(nu,mu,z) = z^nu int_0^1 t^{nu-1} (1 - z t)^{mu-1} dt` for real
/// `nu > 0` and `z` in `(0, 1)`.
///
/// For `nu < 1` the substitution `u = t^nu` removes the endpoint singularity:
/// the integral becomes `(1/nu) int_0^1 (1 - z u^{1/nu})^{mu-1} du`.
pub fn beta_quadrature(nu: f64, mu: f64, z: f64) -> Result<EvalResult> {
    beta_quadrature_with_tol(nu, mu, z, QUAD_REL_TOL)
}

pub fn beta_quadrature_with_tol(nu: f64, mu: f64, z: f64, rel_tol: f64) -> Result<EvalResult> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::OutsideDomain(format!("beta quadrature needs nu > 0, got {nu}")));
    }
    if !(z > 0.0 && z < 1.0) || !mu.is_finite() {
        return Err(Error::OutsideDomain(format!("beta quadrature needs 0 < z < 1, got {z}")));
    }
    let prefactor = z.powf(nu);
    let quad = if nu < 1.0 {
        let inv = 1.0 / nu;
        adaptive_gk21(|u: f64| (1.0 - z * u.powf(inv)).powf(mu - 1.0) * inv, 0.0, 1.0, rel_tol, 0.0)?
    } else {
        adaptive_gk21(|t: f64| t.powf(nu - 1.0) * (1.0 - z * t).powf(mu - 1.0), 0.0, 1.0, rel_tol, 0.0)?
    };
    Ok(EvalResult {
        value: Complex64::new(prefactor * quad.value, 0.0),
        method: OracleMethod::QuadratureBeta,
        error_estimate: prefactor * quad.error + 4.0 * f64::EPSILON * (prefactor * quad.value).abs(),
        terms_or_nodes: quad.evaluations,
    })
}

/// `Phi(z,s,nu) = (1/Gamma(s)) int_0^inf t^{s-1} e^{-(nu-1)t} / (e^t - z) dt`
/// for real `z < 1`, `s > 0`, `nu > 0`.
///
/// The half line is mapped to `[0, 1)` by `v = x / (nu (1 - x))`, with
/// `v = t^s` first when `s < 1` so the integrand stays bounded at the origin.
pub fn phi_quadrature(z: f64, s: f64, nu: f64) -> Result<EvalResult> {
    phi_quadrature_with_tol(z, s, nu, QUAD_REL_TOL)
}

pub fn phi_quadrature_with_tol(z: f64, s: f64, nu: f64, rel_tol: f64) -> Result<EvalResult> {
    if !(z < 1.0 && z.is_finite()) {
        return Err(Error::OutsideDomain(format!("phi quadrature needs real z < 1, got {z}")));
    }
    if !(s > 0.0 && s.is_finite() && nu > 0.0 && nu.is_finite()) {
        return Err(Error::OutsideDomain(format!("phi quadrature needs s > 0 and nu > 0, got s = {s}, nu = {nu}")));
    }
    // e^{-(nu-1)t} / (e^t - z) = e^{-nu t} / ((1 - z) - z expm1(-t))
    let kernel = |t: f64| {
        let e = (-nu * t).exp();
        if e == 0.0 {
            0.0
        } else {
            e / ((1.0 - z) - z * libm::expm1(-t))
        }
    };
    let scale = 1.0 / nu;
    let integrand = |x: f64| {
        if x >= 1.0 {
            return 0.0;
        }
        let v = scale * x / (1.0 - x);
        let jacobian = scale / ((1.0 - x) * (1.0 - x));
        let g = if s < 1.0 {
            kernel(v.powf(1.0 / s)) / s
        } else if s == 1.0 {
            kernel(v)
        } else {
            v.powf(s - 1.0) * kernel(v)
        };
        let out = g * jacobian;
        if out.is_finite() {
            out
        } else {
            0.0
        }
    };
    let quad = adaptive_gk21(integrand, 0.0, 1.0, rel_tol, 0.0)?;
    let gamma = if s == 1.0 { 1.0 } else { libm::tgamma(s) };
    let value = quad.value / gamma;
    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        method: OracleMethod::QuadraturePhi,
        error_estimate: quad.error / gamma + 4.0 * f64::EPSILON * value.abs(),
        terms_or_nodes: quad.evaluations,
    })
}
