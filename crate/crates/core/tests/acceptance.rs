//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use incbeta::bench::{time_method, BenchMethod};
use incbeta::oracles::{beta_series, SeriesPolicy};
use incbeta::verify::{complex_grid_z, negative_nus, positive_fractional_nus, real_grid_z, GridShape};
use incbeta::{
    connection_check, decompose_neg, decompose_pos, int_tanh_power, lerch_reduce, parse_rational, reduce_beta_neg,
    reduce_beta_pos, RationalNu,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rational(s: &str) -> RationalNu {
    parse_rational(s).expect("literal rational")
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn grid_positive() -> Outcome {
    let policy = SeriesPolicy::default();
    let mut worst = (0.0, String::new());
    let mut count = 0;
    for nu in positive_fractional_nus(GridShape::default()) {
        let dec = decompose_pos(&nu).unwrap();
        for z in complex_grid_z() {
            let err = match (reduce_beta_pos(&dec, z), beta_series(&nu, z, &policy)) {
                (Ok((v, _)), Ok(o)) => rel(v, o.value),
                _ => f64::INFINITY,
            };
            count += 1;
            if !(err <= worst.0) {
                worst = (err, format!("nu={nu} z={z}"));
            }
        }
    }
    outcome(worst.0 <= 1e-10, format!("{count} points, max rel err {:.3e} at {}", worst.0, worst.1))
}

fn grid_negative() -> Outcome {
    let policy = SeriesPolicy::default();
    let mut worst = (0.0, String::new());
    let mut count = 0;
    for nu in negative_nus(GridShape::default()) {
        let dec = decompose_neg(&nu).unwrap();
        for z in real_grid_z() {
            let err = match (reduce_beta_neg(&dec, z), beta_series(&nu, z, &policy)) {
                (Ok((v, _)), Ok(o)) => rel(v, o.value),
                _ => f64::INFINITY,
            };
            count += 1;
            if !(err <= worst.0) {
                worst = (err, format!("nu={nu} z={z}"));
            }
        }
    }
    outcome(worst.0 <= 1e-9, format!("{count} points, max rel err {:.3e} at {}", worst.0, worst.1))
}

fn branch_cut() -> Outcome {
    let dec = decompose_pos(&rational("123/10")).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let z = 1.1 + (10.0 - 1.1) * i as f64 / 49.0;
        let dev = match reduce_beta_pos(&dec, Complex64::new(z, 0.0)) {
            Ok((v, _)) => (v.im + PI).abs(),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(dev);
    }
    outcome(worst <= 1e-12, format!("50 points on [1.1, 10], max |Im + pi| {worst:.3e}"))
}

fn ulps(a: f64, b: f64) -> u64 {
    let key = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 { i64::MIN - bits } else { bits }
    };
    key(a).abs_diff(key(b))
}

fn golden() -> Outcome {
    let real = |v: incbeta::Result<(Complex64, incbeta::ReductionTrace)>| v.map(|(c, _)| c).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let z = |x: f64| Complex64::new(x, 0.0);
    let cases = [
        ("B(1,0,1/2)", real(reduce_beta_pos(&decompose_pos(&rational("1")).unwrap(), z(0.5))), LN_2),
        ("B(1/2,0,1/4)", real(reduce_beta_pos(&decompose_pos(&rational("1/2")).unwrap(), z(0.25))), 3f64.ln()),
        ("B(-1/2,0,1/4)", real(reduce_beta_neg(&decompose_neg(&rational("-1/2")).unwrap(), z(0.25))), 3f64.ln() - 4.0),
        (
            "Phi(1/2,1,1)",
            lerch_reduce(&decompose_pos(&rational("1")).unwrap(), z(0.5)).unwrap_or(z(f64::NAN)),
            2.0 * LN_2,
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, value, expected) in cases {
        let d = ulps(value.re, expected);
        pass &= d <= 2 && value.im == 0.0;
        parts.push(format!("{name}: {d} ulp"));
    }
    outcome(pass, parts.join(", "))
}

fn tanh_closed_form() -> Outcome {
    let lambda = rational("5/4");
    let mut worst: f64 = 0.0;
    for z in [0.2, 0.8, 2.0] {
        let s = f64::tanh(z).sqrt();
        let expected = s.atanh() - 2.0 * s + s.atan();
        let dev = int_tanh_power(&lambda, z).map_or(f64::INFINITY, |v| (v - expected).abs());
        worst = worst.max(dev);
    }
    outcome(worst <= 1e-12, format!("z in {{0.2, 0.8, 2}}, max abs diff {worst:.3e}"))
}

fn random_nu(rng: &mut ChaCha8Rng) -> RationalNu {
    let q = rng.gen_range(1..=12i64);
    let p = rng.gen_range(0..q);
    let n = rng.gen_range(0..=6i64);
    let nu = if rng.gen_bool(0.5) { n * q + p } else { p - n * q };
    match RationalNu::new(nu, q) {
        // non-positive integers are outside the domain; redraw
        Ok(r) if !r.is_nonpositive_integer() => r,
        _ => random_nu(rng),
    }
}

fn connection_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut worst = (0.0, String::new());
    for _ in 0..200 {
        let nu = random_nu(&mut rng);
        let mu = rng.gen_range(0..=2u64);
        let z = Complex64::from_polar(rng.gen_range(0.05..0.9), rng.gen_range(-PI..PI));
        let residual = connection_check(&nu, mu, z).unwrap_or(f64::INFINITY);
        if !(residual <= worst.0) {
            worst = (residual, format!("nu={nu} mu={mu} z={z}"));
        }
    }
    outcome(worst.0 <= 1e-12, format!("200 draws, max residual {:.3e} at {}", worst.0, worst.1))
}

fn speed() -> Outcome {
    let nu = rational("1/2");
    let z = Complex64::new(0.999, 0.0);
    let policy = SeriesPolicy::default();
    let run = |m| time_method(m, &nu, z, 100, 5, &policy);
    match (run(BenchMethod::Reduction), run(BenchMethod::Series)) {
        (Ok(red), Ok(ser)) => {
            let ratio = ser.median_nanos / red.median_nanos;
            let agree = rel(red.checksum, ser.checksum) <= 1e-9;
            outcome(
                ratio >= 10.0 && agree,
                format!("median reduction {:.0} ns, series {:.0} ns, ratio {ratio:.1}", red.median_nanos, ser.median_nanos),
            )
        }
        (a, b) => outcome(false, format!("timing failed: {:?} {:?}", a.err(), b.err())),
    }
}

fn derivative() -> Outcome {
    let lambda = rational("5/4");
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for z in [0.2, 0.8, 2.0] {
        let fd = match (int_tanh_power(&lambda, z + h), int_tanh_power(&lambda, z - h)) {
            (Ok(a), Ok(b)) => (a - b) / (2.0 * h),
            _ => f64::NAN,
        };
        let exact = f64::tanh(z).powf(2.0 * lambda.to_f64() - 1.0);
        let err = (fd - exact).abs() / exact.abs();
        worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
    }
    outcome(worst <= 1e-8, format!("central difference h=1e-5, max rel err {worst:.3e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 grid verification, positive nu (1e-10 rel)", grid_positive),
        ("2 grid verification, negative nu (1e-9 rel)", grid_negative),
        ("3 branch cut Im = -pi for nu = 123/10 (1e-12 abs)", branch_cut),
        ("4 closed-form golden values (2 ulp)", golden),
        ("5 tanh integral, lambda = 5/4 (1e-12)", tanh_closed_form),
        ("6 connection formula, 200 seeded draws (1e-12)", connection_suite),
        ("7 reduction >= 10x faster than series at z = 0.999", speed),
        ("8 derivative of tanh integral (1e-8 rel)", derivative),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
