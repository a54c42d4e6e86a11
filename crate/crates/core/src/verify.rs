//! Grid verification of the reduction engine against the series oracle.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use num_integer::Integer;

use crate::numfmt::fmt_f64;
use crate::oracles::{beta_series, OracleMethod, SeriesPolicy};
use crate::rational::RationalNu;
use crate::reduction::reduce_beta;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "Pass",
            Status::Fail => "Fail",
            Status::Skipped => "Skipped",
        }
    }
}

/// One grid point. `rel_err` is `abs_err / max(1, |oracle|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub nu: RationalNu,
    pub z: Complex64,
    pub reduction: Option<Complex64>,
    pub oracle: Option<Complex64>,
    pub oracle_method: Option<OracleMethod>,
    pub abs_err: f64,
    pub rel_err: f64,
    pub status: Status,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Summary {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

/// Shape of the default grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub n_max: u64,
    pub q_max: u64,
}

impl Default for GridShape {
    fn default() -> Self {
        GridShape { n_max: 6, q_max: 12 }
    }
}

/// `nu = n + p/q` for `0 <= n <= n_max`, `2 <= q <= q_max`, `1 <= p < q`, `gcd(p,q) = 1`.
pub fn positive_fractional_nus(shape: GridShape) -> Vec<RationalNu> {
    let mut out = Vec::new();
    for n in 0..=shape.n_max as i64 {
        for q in 2..=shape.q_max as i64 {
            for p in 1..q {
                if p.gcd(&q) == 1 {
                    out.push(RationalNu::new(n * q + p, q).expect("grid rational"));
                }
            }
        }
    }
    out
}

/// `nu = 1, ..., n_max + 1`.
pub fn positive_integer_nus(shape: GridShape) -> Vec<RationalNu> {
    (1..=shape.n_max as i64 + 1).map(RationalNu::from_integer).collect()
}

/// `nu = -n + p/q` for `1 <= n <= n_max` and the same `p/q` as the positive grid.
pub fn negative_nus(shape: GridShape) -> Vec<RationalNu> {
    let mut out = Vec::new();
    for n in 1..=shape.n_max as i64 {
        for q in 2..=shape.q_max as i64 {
            for p in 1..q {
                if p.gcd(&q) == 1 {
                    out.push(RationalNu::new(p - n * q, q).expect("grid rational"));
                }
            }
        }
    }
    out
}

/// `z = 0.05 k` for `k = 1, ..., 18`.
pub fn real_grid_z() -> Vec<Complex64> {
    (1..=18).map(|k| Complex64::new(0.05 * k as f64, 0.0)).collect()
}

/// The real points plus `0.5 e^{i j pi/6}` for `j = 1, ..., 11`.
pub fn complex_grid_z() -> Vec<Complex64> {
    let mut out = real_grid_z();
    out.extend((1..=11).map(|j| Complex64::from_polar(0.5, j as f64 * PI / 6.0)));
    out
}

/// The default verification grid: positive `nu` on real and complex points,
/// negative `nu` on real points.
pub fn default_grid(shape: GridShape) -> Vec<(RationalNu, Complex64)> {
    let complex = complex_grid_z();
    let real = real_grid_z();
    let mut points = Vec::new();
    for nu in positive_fractional_nus(shape).into_iter().chain(positive_integer_nus(shape)) {
        points.extend(complex.iter().map(|&z| (nu, z)));
    }
    for nu in negative_nus(shape) {
        points.extend(real.iter().map(|&z| (nu, z)));
    }
    points
}

/// Grid built from explicit lists; an empty list falls back to the default
/// values for that axis.
pub fn custom_grid(nus: &[RationalNu], zs: &[Complex64], shape: GridShape) -> Vec<(RationalNu, Complex64)> {
    if nus.is_empty() && zs.is_empty() {
        return default_grid(shape);
    }
    let nus: Vec<RationalNu> = if nus.is_empty() {
        let mut all = positive_fractional_nus(shape);
        all.extend(positive_integer_nus(shape));
        all.extend(negative_nus(shape));
        all
    } else {
        nus.to_vec()
    };
    let mut points = Vec::new();
    for nu in nus {
        let axis = if !zs.is_empty() {
            zs.to_vec()
        } else if nu.is_positive() {
            complex_grid_z()
        } else {
            real_grid_z()
        };
        points.extend(axis.into_iter().map(|z| (nu, z)));
    }
    points
}

/// Compare reduction and series oracle at one point.
pub fn verify_point(nu: RationalNu, z: Complex64, tol: f64, policy: &SeriesPolicy) -> VerificationRecord {
    let skipped = |reason: String| VerificationRecord {
        nu,
        z,
        reduction: None,
        oracle: None,
        oracle_method: None,
        abs_err: f64::NAN,
        rel_err: f64::NAN,
        status: Status::Skipped,
        reason: Some(reason),
    };
    let reduction = match reduce_beta(&nu, z) {
        Ok(v) => v,
        Err(e) => return skipped(e.to_string()),
    };
    let oracle = match beta_series(&nu, z, policy) {
        Ok(v) => v,
        Err(e) => {
            let mut rec = skipped(e.to_string());
            rec.reduction = Some(reduction);
            return rec;
        }
    };
    let abs_err = (reduction - oracle.value).norm();
    let rel_err = abs_err / oracle.value.norm().max(1.0);
    let status = if rel_err <= tol { Status::Pass } else { Status::Fail };
    VerificationRecord {
        nu,
        z,
        reduction: Some(reduction),
        oracle: Some(oracle.value),
        oracle_method: Some(oracle.method),
        abs_err,
        rel_err,
        status,
        reason: None,
    }
}

pub fn run_verification(points: &[(RationalNu, Complex64)], tol: f64, policy: &SeriesPolicy) -> Vec<VerificationRecord> {
    points.iter().map(|&(nu, z)| verify_point(nu, z, tol, policy)).collect()
}

pub const CSV_HEADER: &str =
    "nu,z_re,z_im,reduction_re,reduction_im,oracle_re,oracle_im,oracle_method,abs_err,rel_err,status,reason";

fn opt_parts(v: Option<Complex64>) -> (String, String) {
    v.map_or((String::new(), String::new()), |c| (fmt_f64(c.re), fmt_f64(c.im)))
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Records as CSV with LF line endings, in input order.
pub fn write_csv<W: Write>(records: &[VerificationRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let (red_re, red_im) = opt_parts(r.reduction);
        let (ora_re, ora_im) = opt_parts(r.oracle);
        let num = |x: f64| if x.is_nan() { String::new() } else { fmt_f64(x) };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.nu,
            fmt_f64(r.z.re),
            fmt_f64(r.z.im),
            red_re,
            red_im,
            ora_re,
            ora_im,
            r.oracle_method.map_or("", |m| m.as_str()),
            num(r.abs_err),
            num(r.rel_err),
            r.status.as_str(),
            csv_field(r.reason.as_deref().unwrap_or("")),
        )?;
    }
    Ok(())
}
