//! Command-line front end for the `incbeta` library.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or domain errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use incbeta::bench::{self, BenchCase, Preset};
use incbeta::numfmt::{fmt_complex, fmt_f64};
use incbeta::oracles::SeriesPolicy;
use incbeta::verify::{self, GridShape, Summary};
use incbeta::{
    beta_mu_posint, decompose_pos, int_power_over_linear, int_tanh_power, lerch_reduce, parse_rational, reduce_beta,
    reduce_beta_pos, Error, RationalNu,
};

#[derive(Parser)]
#[command(name = "incbeta", version, about = "Elementary reductions of the incomplete beta function B(nu,0,z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval {
        #[command(subcommand)]
        function: EvalFunction,
    },
    /// Compare the reduction against the series oracle over a grid (CSV).
    Verify(VerifyArgs),
    /// Imaginary part of B(nu,0,z) on a real segment z > 1 (CSV).
    Figure(FigureArgs),
    /// Evaluate an integral through its closed form.
    Integral {
        #[command(subcommand)]
        family: IntegralFamily,
    },
    /// Time the reduction against the oracles (CSV).
    Bench(BenchArgs),
}

#[derive(Args)]
struct Point {
    /// Rational parameter, e.g. 7/3, -1/2 or 12.3.
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    /// Argument as `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
}

#[derive(Subcommand)]
enum EvalFunction {
    /// B(nu,0,z).
    Beta(Point),
    /// Phi(z,1,nu) for nu > 0.
    Lerch(Point),
    /// B(nu,m+1,z).
    BetaMu {
        #[command(flatten)]
        point: Point,
        /// Non-negative integer m; the second beta parameter is m + 1.
        #[arg(long)]
        m: u64,
    },
}

#[derive(Subcommand)]
enum IntegralFamily {
    /// int_0^1 t^{nu-1}/(1 - z t) dt.
    Powlin(Point),
    /// int_0^z tanh^{2 lambda - 1}(t) dt.
    Tanh {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Real upper limit z > 0.
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Parameter to check (repeatable). Defaults to the full grid.
    #[arg(long, allow_hyphen_values = true)]
    nu: Vec<String>,
    /// Argument to check (repeatable). Defaults to the standard points.
    #[arg(long, allow_hyphen_values = true)]
    z: Vec<String>,
    /// Error bound on |reduction - oracle| / max(1, |oracle|).
    #[arg(long, default_value_t = verify::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Largest integer part n of the default grid.
    #[arg(long, default_value_t = 6)]
    n_max: u64,
    /// Largest denominator q of the default grid.
    #[arg(long, default_value_t = 12)]
    q_max: u64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "123/10")]
    nu: String,
    #[arg(long, default_value_t = 1.1)]
    z_start: f64,
    #[arg(long, default_value_t = 10.0)]
    z_end: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Named grid point: near-one or small-z. Defaults to both.
    #[arg(long)]
    preset: Option<String>,
    /// Custom point; needs --z as well.
    #[arg(long, allow_hyphen_values = true, requires = "z", conflicts_with = "preset")]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "nu")]
    z: Option<String>,
    #[arg(long, default_value_t = 100)]
    reps: u32,
    #[arg(long, default_value_t = 5)]
    warmup: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_z(text: &str) -> Result<Complex64, Error> {
    let number = |s: &str| {
        s.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| Error::Parse(format!("bad z component '{s}'")))
    };
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(number(re)?, number(im)?)),
        None => Ok(Complex64::new(number(text)?, 0.0)),
    }
}

fn parse_point(p: &Point) -> Result<(RationalNu, Complex64), Error> {
    Ok((parse_rational(&p.nu)?, parse_z(&p.z)?))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::InvalidParameter(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn io_error(e: io::Error) -> Error {
    Error::InvalidParameter(format!("write failed: {e}"))
}

fn eval(function: &EvalFunction) -> Result<Complex64, Error> {
    match function {
        EvalFunction::Beta(p) => {
            let (nu, z) = parse_point(p)?;
            reduce_beta(&nu, z)
        }
        EvalFunction::Lerch(p) => {
            let (nu, z) = parse_point(p)?;
            if !nu.is_positive() {
                return Err(Error::InvalidParameter(format!("lerch needs nu > 0, got {nu}")));
            }
            lerch_reduce(&decompose_pos(&nu)?, z)
        }
        EvalFunction::BetaMu { point, m } => {
            let (nu, z) = parse_point(point)?;
            beta_mu_posint(&nu, *m, z)
        }
    }
}

fn integral(family: &IntegralFamily) -> Result<Complex64, Error> {
    match family {
        IntegralFamily::Powlin(p) => {
            let (nu, z) = parse_point(p)?;
            int_power_over_linear(&nu, z)
        }
        IntegralFamily::Tanh { lambda, z } => {
            int_tanh_power(&parse_rational(lambda)?, *z).map(|v| Complex64::new(v, 0.0))
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<Summary, Error> {
    if !(args.tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("tol = {} must be non-negative", args.tol)));
    }
    if args.q_max < 2 {
        return Err(Error::InvalidParameter(format!("q-max = {} must be at least 2", args.q_max)));
    }
    let nus = args.nu.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    let zs = args.z.iter().map(|s| parse_z(s)).collect::<Result<Vec<_>, _>>()?;
    let shape = GridShape { n_max: args.n_max, q_max: args.q_max };
    let points = verify::custom_grid(&nus, &zs, shape);
    let records = verify::run_verification(&points, args.tol, &SeriesPolicy::default());
    let mut out = output(&args.out)?;
    verify::write_csv(&records, &mut out).and_then(|_| out.flush()).map_err(io_error)?;
    Ok(Summary::of(&records))
}

fn run_figure(args: &FigureArgs) -> Result<(), Error> {
    let nu = parse_rational(&args.nu)?;
    if !nu.is_positive() {
        return Err(Error::InvalidParameter(format!("figure needs nu > 0, got {nu}")));
    }
    if !(args.z_start > 1.0 && args.z_end > args.z_start && args.z_end.is_finite()) {
        return Err(Error::OutsideDomain(format!("need 1 < z-start < z-end, got [{}, {}]", args.z_start, args.z_end)));
    }
    if args.points < 2 {
        return Err(Error::InvalidParameter(format!("points = {} must be at least 2", args.points)));
    }
    let dec = decompose_pos(&nu)?;
    let mut rows = Vec::with_capacity(args.points);
    for i in 0..args.points {
        let z = if i + 1 == args.points {
            args.z_end
        } else {
            args.z_start + (args.z_end - args.z_start) * i as f64 / (args.points - 1) as f64
        };
        let (value, _) = reduce_beta_pos(&dec, Complex64::new(z, 0.0))?;
        rows.push((z, value.im));
    }
    let mut out = output(&args.out)?;
    let write = |out: &mut dyn Write| -> io::Result<()> {
        writeln!(out, "z,im_reduction,im_series_analytic")?;
        for (z, im) in &rows {
            writeln!(out, "{},{},{}", fmt_f64(*z), fmt_f64(*im), fmt_f64(-std::f64::consts::PI))?;
        }
        out.flush()
    };
    write(&mut out).map_err(io_error)
}

fn run_bench(args: &BenchArgs) -> Result<(), Error> {
    if args.reps < 1 {
        return Err(Error::InvalidParameter("repetitions must be at least 1".into()));
    }
    let cases = match (&args.preset, &args.nu, &args.z) {
        (Some(name), _, _) => vec![Preset::parse(name)?.case()],
        (None, Some(nu), Some(z)) => vec![BenchCase::all_methods(parse_rational(nu)?, parse_z(z)?)],
        _ => vec![Preset::NearOne.case(), Preset::SmallZ.case()],
    };
    let records = bench::run_bench(&cases, args.reps, args.warmup)?;
    let mut out = output(&args.out)?;
    bench::write_csv(&records, &mut out).and_then(|_| out.flush()).map_err(io_error)
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let printed = match &cli.command {
        Command::Eval { function } => eval(function),
        Command::Integral { family } => integral(family),
        Command::Verify(args) => {
            return match run_verify(args) {
                Ok(s) => {
                    eprintln!("passed={} failed={} skipped={}", s.passed, s.failed, s.skipped);
                    if s.failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) }
                }
                Err(e) => fail(e),
            };
        }
        Command::Figure(args) => return run_figure(args).map_or_else(fail, |_| ExitCode::SUCCESS),
        Command::Bench(args) => return run_bench(args).map_or_else(fail, |_| ExitCode::SUCCESS),
    };
    match printed {
        Ok(v) => {
            println!("{}", fmt_complex(v));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
