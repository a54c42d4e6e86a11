//! Double-double arithmetic (about 32 significant digits) for the reduction
//! engine.
//!
//! The reductions subtract a finite partial sum from a logarithmic sum of
//! much larger magnitude when `|z|` is small, so the logarithms, roots and
//! powers are carried in double-double and rounded once at the end. Only the
//! handful of functions the engine needs are provided: `exp`, `sin_cos` on
//! moderate arguments and a principal complex logarithm.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const DD_ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const DD_ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
const DD_LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };
const DD_FRAC_PI_2: Dd = Dd { hi: std::f64::consts::FRAC_PI_2, lo: 6.123_233_995_736_766e-17 };

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl Dd {
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact quotient of two integers (up to 2^53), rounded to double-double.
    pub fn ratio(num: f64, den: f64) -> Dd {
        Dd::from(num) / Dd::from(den)
    }

    fn mul_pow2(self, scale: f64) -> Dd {
        Dd { hi: self.hi * scale, lo: self.lo * scale }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.78 {
            return Dd::from(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return DD_ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return DD_ONE;
        }
        let k = (self.hi / DD_LN2.hi).round();
        // |r| <= ln2/2, then scaled by 2^-10 before the Taylor series.
        let r = (self - DD_LN2 * k).mul_pow2(1.0 / 1024.0);
        let mut term = r;
        let mut em1 = r;
        for i in 2..=12 {
            term = term * r / (i as f64);
            em1 = em1 + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + e)^2 - 1 = e (2 + e), repeated ten times.
        for _ in 0..10 {
            em1 = em1 * (em1 + 2.0);
        }
        let result = em1 + 1.0;
        // Split 2^k so subnormal results and exponents near the limits work.
        let k = k as i32;
        let (k1, k2) = (k / 2, k - k / 2);
        result.mul_pow2(2f64.powi(k1)).mul_pow2(2f64.powi(k2))
    }

    /// Sine and cosine for `|x|` up to a few multiples of pi.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let j = (self.hi / DD_FRAC_PI_2.hi).round();
        let r = self - DD_FRAC_PI_2 * j;
        let (s, c) = sin_cos_taylor(r);
        match (j as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

/// Taylor series for `|r| <= pi/4`.
fn sin_cos_taylor(r: Dd) -> (Dd, Dd) {
    if r.hi == 0.0 {
        return (r, DD_ONE);
    }
    let r2 = r * r;
    let mut sin = r;
    let mut cos = DD_ONE;
    let mut term_s = r;
    let mut term_c = DD_ONE;
    for i in 1..=17 {
        let k = (2 * i) as f64;
        term_c = -(term_c * r2) / (k * (k - 1.0));
        term_s = -(term_s * r2) / (k * (k + 1.0));
        cos = cos + term_c;
        sin = sin + term_s;
        if term_c.hi.abs() < 1e-40 {
            break;
        }
    }
    (sin, cos)
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self / Dd::from(b)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

pub const CDD_ZERO: Cdd = Cdd { re: DD_ZERO, im: DD_ZERO };
pub const CDD_ONE: Cdd = Cdd { re: DD_ONE, im: DD_ZERO };

impl From<Complex64> for Cdd {
    fn from(z: Complex64) -> Self {
        Cdd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }
}

impl From<Dd> for Cdd {
    fn from(re: Dd) -> Self {
        Cdd { re, im: DD_ZERO }
    }
}

impl Cdd {
    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Leading-part approximation, good to one double rounding.
    pub fn hi(self) -> Complex64 {
        Complex64::new(self.re.hi, self.im.hi)
    }

    pub fn is_zero(self) -> bool {
        self.re.hi == 0.0 && self.im.hi == 0.0
    }

    #[cfg(test)]
    pub fn conj(self) -> Cdd {
        Cdd { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, k: Dd) -> Cdd {
        Cdd { re: self.re * k, im: self.im * k }
    }

    pub fn recip(self) -> Cdd {
        // Power-of-two prescaling keeps |z|^2 inside the exponent range.
        let m = self.re.hi.abs().max(self.im.hi.abs());
        let scale = if m > 0.0 && m.is_finite() { 2f64.powi(-(m.log2().floor() as i32)) } else { 1.0 };
        let a = Cdd { re: self.re.mul_pow2(scale), im: self.im.mul_pow2(scale) };
        let d = a.norm_sqr();
        Cdd { re: (a.re / d).mul_pow2(scale), im: -(a.im / d).mul_pow2(scale) }
    }

    pub fn powu(self, mut e: u64) -> Cdd {
        let mut base = self;
        let mut acc = CDD_ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// `exp(x + iy)` for moderate `|y|`.
    pub fn exp(self) -> Cdd {
        let mag = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cdd { re: mag * c, im: mag * s }
    }

    /// Principal logarithm, imaginary part in (-pi, pi]. `self` must be nonzero.
    ///
    /// One Newton step on `exp(y) = u` from the double-precision logarithm:
    /// `log u = y0 + log1p(u exp(-y0) - 1)`, where the correction is O(1e-16)
    /// so three terms of the log1p series suffice.
    pub fn ln(self) -> Cdd {
        let y0 = self.hi().ln();
        let e = Cdd::from(-y0).exp();
        let d = self * e - CDD_ONE;
        let d2 = d * d;
        let log1p = d - d2.scale(Dd::from(0.5)) + (d2 * d).scale(Dd::ratio(1.0, 3.0));
        Cdd::from(y0) + log1p
    }

    /// Principal `q`-th root: the double-precision principal root refined by
    /// Newton's method against the full double-double argument.
    pub fn principal_root(self, q: u64) -> Cdd {
        if self.is_zero() || q == 1 {
            return self;
        }
        let z = self.hi();
        let w0 = if q == 2 { z.sqrt() } else { z.powf(1.0 / q as f64) };
        let mut w = Cdd::from(w0);
        let qd = Dd::from(q as f64);
        for _ in 0..2 {
            let wq1 = w.powu(q - 1);
            let f = wq1 * w - self;
            w = w - f / wq1.scale(qd);
        }
        w
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd { re: -self.re, im: -self.im }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, b: Cdd) -> Cdd {
        Cdd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, b: Cdd) -> Cdd {
        Cdd { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, b: Cdd) -> Cdd {
        self * b.recip()
    }
}

/// `exp(2 pi i j / q)` for `j` in `0..q`.
///
/// Angles are reduced to `(-pi, pi]` and evaluated from the exact rational
/// `4j/q` (quadrant plus a fractional remainder), so entries `j` and `q - j`
/// are exact conjugates and `1, i, -1, -i` are exact.
pub fn roots_of_unity(q: u64) -> Vec<Cdd> {
    let qi = q as i64;
    (0..qi)
        .map(|j| {
            let m = if 2 * j <= qi { j } else { j - qi };
            let quadrant = (4.0 * m as f64 / q as f64).round();
            let rem = 4 * m - quadrant as i64 * qi;
            let r = DD_FRAC_PI_2 * Dd::ratio(rem as f64, q as f64);
            let (s, c) = sin_cos_taylor(r);
            let (s, c) = match (quadrant as i64).rem_euclid(4) {
                0 => (s, c),
                1 => (c, -s),
                2 => (-s, -c),
                _ => (-c, s),
            };
            Cdd::new(c, s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn arithmetic_carries_extra_precision() {
        let third = Dd::ratio(1.0, 3.0);
        let back = third * 3.0 - DD_ONE;
        assert!(back.to_f64().abs() < 1e-31);
        let x = Dd::from(1.0) + 1e-20;
        assert_eq!(x.hi, 1.0);
        assert_eq!(x.lo, 1e-20);
        assert_eq!((x - DD_ONE).to_f64(), 1e-20);
    }

    #[test]
    fn exp_matches_known_values() {
        assert!(close(Dd::from(1.0).exp(), std::f64::consts::E, 1e-16));
        assert!(close(Dd::from(-3.5).exp(), (-3.5f64).exp(), 2e-16));
        let ln2 = DD_LN2.exp() - Dd::from(2.0);
        assert!(ln2.to_f64().abs() < 1e-30);
        assert_eq!(DD_ZERO.exp(), DD_ONE);
        assert!(close(Dd::from(-740.0).exp(), (-740.0f64).exp(), 1e-10));
        assert!(close(Dd::from(700.0).exp(), 700f64.exp(), 1e-15));
    }

    #[test]
    fn sin_cos_hits_exact_pi_residuals() {
        let (s, c) = Dd::from(std::f64::consts::PI).sin_cos();
        // sin(fl(pi)) = pi - fl(pi) to first order.
        assert!(close(s, 1.224_646_799_147_353_2e-16, 1e-15));
        assert!((c + DD_ONE).to_f64().abs() < 1e-31);
        let (s, c) = Dd::from(0.7).sin_cos();
        assert!(close(s, 0.7f64.sin(), 2e-16));
        assert!(close(c, 0.7f64.cos(), 2e-16));
        let s2c2 = s * s + c * c - DD_ONE;
        assert!(s2c2.to_f64().abs() < 1e-31);
    }

    #[test]
    fn log_inverts_exp_to_double_double() {
        for z in [
            Complex64::new(0.3, 0.4),
            Complex64::new(-2.0, 1e-3),
            Complex64::new(-0.5, 0.0),
            Complex64::new(1.0 + 1e-15, 0.0),
            Complex64::new(7.0, -3.0),
        ] {
            let u = Cdd::from(z);
            let back = u.ln().exp() - u;
            assert!(back.hi().norm() < 1e-30 * z.norm(), "{z}");
        }
        let l = Cdd::from(Complex64::new(-1.0, 0.0)).ln();
        assert!(l.re.to_f64().abs() < 1e-30);
        assert_eq!(l.im.to_f64(), std::f64::consts::PI);
    }

    #[test]
    fn log_near_one_is_relatively_accurate() {
        let u = Cdd::from(Dd::from(1.0) + 1e-20);
        let l = u.ln();
        assert!((l.re.to_f64() - 1e-20).abs() < 1e-35);
        assert_eq!(l.im.to_f64(), 0.0);
    }

    #[test]
    fn principal_roots() {
        let z = Cdd::from(Complex64::new(-8.0, 0.0));
        let w = z.principal_root(3);
        let expected = Complex64::new(1.0, 3f64.sqrt());
        assert!((w.to_c64() - expected).norm() < 1e-15);
        assert!((w.powu(3) - z).hi().norm() < 1e-29);
        let w = Cdd::from(Complex64::new(0.25, 0.0)).principal_root(2);
        assert_eq!(w.to_c64(), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn roots_of_unity_are_exact_conjugate_pairs() {
        for q in 1..=24u64 {
            let roots = roots_of_unity(q);
            assert_eq!(roots[0], CDD_ONE);
            for j in 1..q as usize {
                assert_eq!(roots[j], roots[q as usize - j].conj(), "q={q} j={j}");
                let err = roots[j].powu(q) - CDD_ONE;
                assert!(err.hi().norm() < 1e-30 * q as f64, "q={q} j={j}");
            }
            if q % 2 == 0 {
                assert_eq!(roots[q as usize / 2].to_c64(), Complex64::new(-1.0, 0.0));
            }
            if q % 4 == 0 {
                assert_eq!(roots[q as usize / 4].to_c64(), Complex64::new(0.0, 1.0));
            }
        }
    }
}
