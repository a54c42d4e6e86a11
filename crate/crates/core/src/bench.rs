//! Wall-clock comparison of the reduction against the series and quadrature
//! oracles on a grid of `(nu, z)` points.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numfmt::fmt_f64;
use crate::oracles::{beta_quadrature, beta_series, SeriesPolicy};
use crate::rational::{parse_rational, RationalNu};
use crate::reduction::reduce_beta;

/// Relative disagreement with the reduction above which a timing is rejected.
pub const VALIDITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchMethod {
    Reduction,
    Series,
    QuadratureBeta,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 3] = [BenchMethod::Reduction, BenchMethod::Series, BenchMethod::QuadratureBeta];

    pub fn as_str(&self) -> &'static str {
        match self {
            BenchMethod::Reduction => "Reduction",
            BenchMethod::Series => "Series",
            BenchMethod::QuadratureBeta => "QuadratureBeta",
        }
    }

    /// Quadrature is only defined on the real segment `0 < z < 1`.
    pub fn supports(&self, nu: &RationalNu, z: Complex64) -> bool {
        match self {
            BenchMethod::QuadratureBeta => nu.is_positive() && z.im == 0.0 && z.re > 0.0 && z.re < 1.0,
            _ => true,
        }
    }

    /// One evaluation of `B(nu,0,z)`.
    pub fn evaluate(&self, nu: &RationalNu, z: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
        match self {
            BenchMethod::Reduction => reduce_beta(nu, z),
            BenchMethod::Series => beta_series(nu, z, policy).map(|r| r.value),
            BenchMethod::QuadratureBeta => {
                if !self.supports(nu, z) {
                    return Err(Error::OutsideDomain(format!("quadrature needs nu > 0 and real 0 < z < 1, got z = {z}")));
                }
                beta_quadrature(nu.to_f64(), 0.0, z.re).map(|r| r.value)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: BenchMethod,
    pub nu: RationalNu,
    pub z: Complex64,
    pub repetitions: u32,
    pub median_nanos: f64,
    pub mean_nanos: f64,
    /// Value of the last timed evaluation.
    pub checksum: Complex64,
}

/// A grid point with the methods to time on it.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCase {
    pub nu: RationalNu,
    pub z: Complex64,
    pub methods: Vec<BenchMethod>,
}

impl BenchCase {
    /// Every method that supports the point.
    pub fn all_methods(nu: RationalNu, z: Complex64) -> Self {
        let methods = BenchMethod::ALL.into_iter().filter(|m| m.supports(&nu, z)).collect();
        BenchCase { nu, z, methods }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `nu = 1/2`, `z = 0.999`: slow series convergence.
    NearOne,
    /// `nu = 5/4`, `z = 0.1`.
    SmallZ,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Preset> {
        match name {
            "near-one" => Ok(Preset::NearOne),
            "small-z" => Ok(Preset::SmallZ),
            other => Err(Error::Parse(format!("unknown preset '{other}' (expected near-one or small-z)"))),
        }
    }

    pub fn case(&self) -> BenchCase {
        let (nu, z) = match self {
            Preset::NearOne => ("1/2", 0.999),
            Preset::SmallZ => ("5/4", 0.1),
        };
        BenchCase::all_methods(parse_rational(nu).expect("preset nu"), Complex64::new(z, 0.0))
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn tag(method: BenchMethod, nu: &RationalNu, z: Complex64, source: Error) -> Error {
    Error::BenchFailure { method: method.as_str().into(), nu: nu.to_string(), z: z.to_string(), source: Box::new(source) }
}

/// Time one method at one point: `warmup` untimed calls, then `reps` timed ones.
pub fn time_method(
    method: BenchMethod,
    nu: &RationalNu,
    z: Complex64,
    reps: u32,
    warmup: u32,
    policy: &SeriesPolicy,
) -> Result<BenchRecord> {
    if reps < 1 {
        return Err(Error::InvalidParameter("repetitions must be at least 1".into()));
    }
    for _ in 0..warmup {
        black_box(method.evaluate(black_box(nu), black_box(z), policy)).map_err(|e| tag(method, nu, z, e))?;
    }
    let mut samples = Vec::with_capacity(reps as usize);
    let mut checksum = Complex64::new(0.0, 0.0);
    for _ in 0..reps {
        let start = Instant::now();
        let value = black_box(method.evaluate(black_box(nu), black_box(z), policy));
        let elapsed = start.elapsed().as_nanos() as f64;
        checksum = value.map_err(|e| tag(method, nu, z, e))?;
        samples.push(elapsed);
    }
    samples.sort_by(f64::total_cmp);
    Ok(BenchRecord {
        method,
        nu: *nu,
        z,
        repetitions: reps,
        median_nanos: median(&samples),
        mean_nanos: samples.iter().sum::<f64>() / reps as f64,
        checksum,
    })
}

/// Time every case. Each oracle checksum must agree with the reduction to
/// within [`VALIDITY_TOL`] (relative), otherwise the run fails.
pub fn run_bench(cases: &[BenchCase], reps: u32, warmup: u32) -> Result<Vec<BenchRecord>> {
    if reps < 1 {
        return Err(Error::InvalidParameter("repetitions must be at least 1".into()));
    }
    let policy = SeriesPolicy::default();
    let mut records = Vec::new();
    for case in cases {
        let reference = reduce_beta(&case.nu, case.z).map_err(|e| tag(BenchMethod::Reduction, &case.nu, case.z, e))?;
        for &method in &case.methods {
            let record = time_method(method, &case.nu, case.z, reps, warmup, &policy)?;
            let rel = (record.checksum - reference).norm() / reference.norm().max(f64::MIN_POSITIVE);
            if rel > VALIDITY_TOL {
                return Err(Error::BenchDisagreement {
                    method: method.as_str().into(),
                    nu: case.nu.to_string(),
                    z: case.z.to_string(),
                    rel,
                });
            }
            records.push(record);
        }
    }
    Ok(records)
}

pub const CSV_HEADER: &str = "method,nu,z_re,z_im,reps,median_ns,mean_ns,checksum";

/// Records as CSV with LF line endings. The checksum column holds the real part.
pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.method.as_str(),
            r.nu,
            fmt_f64(r.z.re),
            fmt_f64(r.z.im),
            r.repetitions,
            fmt_f64(r.median_nanos),
            fmt_f64(r.mean_nanos),
            fmt_f64(r.checksum.re),
        )?;
    }
    Ok(())
}
