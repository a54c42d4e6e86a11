//! Exact rational parameter `nu` and its integer-part/fraction decompositions.
//!
//! Input grammar is `[-]digits[/digits]` or `[-]digits[.digits]`; decimals are
//! read as scaled integers, so `"12.3"` is exactly `123/10`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A rational number in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalNu {
    num: i64,
    den: i64,
}

impl RationalNu {
    /// Builds `num/den` reduced to lowest terms.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(value: i64) -> Self {
        RationalNu { num: value, den: 1 }
    }

    fn from_i128(num: i128, den: i128) -> Result<Self> {
        debug_assert!(den != 0);
        let g = num.gcd(&den).max(1);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Ok(RationalNu { num, den }),
            _ => Err(Error::Overflow(format!("{num}/{den}"))),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    /// True for 0, -1, -2, ..., where the defining series of B(nu,0,z) diverges.
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && self.num <= 0
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// `self + k`, exact.
    pub fn add_integer(&self, k: i64) -> Result<Self> {
        let num = self.num as i128 + k as i128 * self.den as i128;
        Self::from_i128(num, self.den as i128)
    }
}

impl fmt::Display for RationalNu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalNu {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

fn parse_digits(digits: &str, whole: &str) -> Result<i128> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed rational {whole:?}")));
    }
    digits
        .parse::<i128>()
        .ok()
        .filter(|v| *v <= i64::MAX as i128)
        .ok_or_else(|| Error::Overflow(whole.to_string()))
}

/// Parses `a/b` or a finite decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Result<RationalNu> {
    let whole = text.trim();
    let (negative, body) = match whole.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, whole),
    };
    let sign = if negative { -1 } else { 1 };

    if let Some((a, b)) = body.split_once('/') {
        let num = parse_digits(a, whole)?;
        let den = parse_digits(b, whole)?;
        if den == 0 {
            return Err(Error::ZeroDenominator(whole.to_string()));
        }
        return RationalNu::from_i128(sign * num, den);
    }

    if let Some((int_part, frac_part)) = body.split_once('.') {
        let int_value = parse_digits(int_part, whole)?;
        let frac_value = parse_digits(frac_part, whole)?;
        let scale = u32::try_from(frac_part.len())
            .ok()
            .and_then(|e| 10i128.checked_pow(e))
            .filter(|s| *s <= i64::MAX as i128)
            .ok_or_else(|| Error::Overflow(whole.to_string()))?;
        let num = int_value
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_value))
            .ok_or_else(|| Error::Overflow(whole.to_string()))?;
        return RationalNu::from_i128(sign * num, scale);
    }

    let num = parse_digits(body, whole)?;
    RationalNu::from_i128(sign * num, 1)
}

/// `nu = n + p/q > 0` with `0 <= p < q`.
///
/// Positive integers are stored with the boundary flag set and `n = nu - 1`,
/// matching the `r = 1` form `B(n+1,0,z) = -log(1-z) - sum_{k=1}^{n} z^k/k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosDecomposition {
    n: u64,
    p: u64,
    q: u64,
    integer_boundary: bool,
}

impl PosDecomposition {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Set when `nu` is a positive integer (`r = 1`).
    pub fn integer_boundary(&self) -> bool {
        self.integer_boundary
    }

    pub fn is_half_integer(&self) -> bool {
        !self.integer_boundary && self.q == 2
    }

    pub fn reconstruct(&self) -> RationalNu {
        if self.integer_boundary {
            RationalNu::from_integer(self.n as i64 + 1)
        } else {
            RationalNu::new((self.n * self.q + self.p) as i64, self.q as i64)
                .expect("decomposition of a representable rational")
        }
    }
}

/// `nu = -n + p/q < 0` with `n >= 1` and `0 < p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegDecomposition {
    n: u64,
    p: u64,
    q: u64,
}

impl NegDecomposition {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_half_integer(&self) -> bool {
        self.q == 2
    }

    pub fn reconstruct(&self) -> RationalNu {
        let num = self.p as i128 - self.n as i128 * self.q as i128;
        RationalNu::from_i128(num, self.q as i128).expect("decomposition of a representable rational")
    }
}

pub fn decompose_pos(nu: &RationalNu) -> Result<PosDecomposition> {
    if !nu.is_positive() {
        return Err(if nu.is_integer() {
            Error::DivergentParameter(nu.to_string())
        } else {
            Error::InvalidParameter(format!("nu = {nu} is not positive"))
        });
    }
    let n = nu.floor() as u64;
    if nu.is_integer() {
        return Ok(PosDecomposition { n: n - 1, p: 0, q: 1, integer_boundary: true });
    }
    // gcd(num, den) = 1 implies gcd(num mod den, den) = 1.
    let p = nu.numer().rem_euclid(nu.denom()) as u64;
    Ok(PosDecomposition { n, p, q: nu.denom() as u64, integer_boundary: false })
}

pub fn decompose_neg(nu: &RationalNu) -> Result<NegDecomposition> {
    if nu.is_nonpositive_integer() {
        return Err(Error::DivergentParameter(nu.to_string()));
    }
    if !nu.is_negative() {
        return Err(Error::InvalidParameter(format!("nu = {nu} is not negative")));
    }
    let n = (-nu.floor()) as u64;
    let p = nu.numer().rem_euclid(nu.denom()) as u64;
    Ok(NegDecomposition { n, p, q: nu.denom() as u64 })
}
