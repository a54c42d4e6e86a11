//! Round-trip-exact decimal rendering used by every CSV and CLI output.

use num_complex::Complex64;

/// Shortest decimal string that parses back to exactly `x` (at most 17
/// significant digits), switching to exponent form outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !a.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `re` when the imaginary part is zero, otherwise `re+imi` / `re-imi`.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
    }
}
