//! Closed-form evaluation of `B(nu,0,z)`, `B(nu,m+1,z)` and `Phi(z,1,nu)` for
//! rational `nu`.
//!
//! For `nu = n + p/q > 0`
//!
//! ```text
//! B(nu,0,z) = -sum_{k=0}^{q-1} e^{-2 pi i p k/q} Log(1 - z^{1/q} e^{2 pi i k/q})
//!             - sum_{k=0}^{n-1} z^{k+p/q} / (k + p/q)
//! ```
//!
//! and for `nu = -n + p/q < 0` the second sum is replaced by
//! `+ sum_{k=1}^{n} z^{p/q-k} / (p/q - k)`. Positive integers use
//! `-Log(1-z) - sum_{k=1}^{n} z^k/k` and half-integers use the `atanh` form.
//!
//! Log and `z^{1/q}` are principal. Everything is evaluated in double-double
//! and rounded once, since the partial sum cancels most of the logarithmic
//! sum when `|z|` is small.

use num_complex::Complex64;

use crate::dd::{roots_of_unity, Cdd, Dd, CDD_ONE, CDD_ZERO};
use crate::error::{Error, Result};
use crate::rational::{decompose_neg, decompose_pos, NegDecomposition, PosDecomposition, RationalNu};
use crate::sum::NeumaierSum;

pub type ComplexValue = Complex64;

/// Smallest `|1 - z^{1/q} e^{2 pi i k/q}|` accepted before reporting a branch point.
pub const BRANCH_GUARD: f64 = 1e-14;

/// Largest `m` accepted by [`beta_mu_posint`].
pub const MAX_POLY_DEGREE: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionMethod {
    IntegerLog,
    HalfAtanh,
    RootsOfUnityPos,
    RootsOfUnityNeg,
    PolynomialMu,
}

/// One term of the logarithmic sum: `contribution = -root_phase * log_term`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTerm {
    pub k: u64,
    pub root_phase: Complex64,
    pub log_term: Complex64,
    pub contribution: Complex64,
}

/// Diagnostic decomposition of a reduction. `tail_sum` is the signed finite
/// sum as it enters the result, so the value is `sum(contribution) + tail_sum`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace {
    pub terms: Vec<RootTerm>,
    pub tail_sum: Complex64,
    pub method: ReductionMethod,
}

impl ReductionTrace {
    /// Compensated sum of the recorded contributions.
    pub fn total(&self) -> Complex64 {
        let mut acc: NeumaierSum = self.terms.iter().map(|t| t.contribution).collect();
        acc.add(self.tail_sum);
        acc.value()
    }

    /// Largest modulus among the recorded contributions and the tail.
    pub fn largest_term(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.contribution.norm())
            .fold(self.tail_sum.norm(), f64::max)
    }
}

/// Which form of the logarithmic sum to use for a fractional `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Route {
    /// Special-case fast paths where available.
    Auto,
    /// Always the general roots-of-unity sum.
    RootsOfUnity,
}

#[derive(Debug, Clone, Copy)]
struct TermDd {
    k: u64,
    phase: Cdd,
    log: Cdd,
    contribution: Cdd,
}

#[derive(Debug, Clone)]
pub(crate) struct TraceDd {
    terms: Vec<TermDd>,
    tail: Cdd,
    method: ReductionMethod,
}

impl TraceDd {
    fn rounded(&self) -> ReductionTrace {
        ReductionTrace {
            terms: self
                .terms
                .iter()
                .map(|t| RootTerm {
                    k: t.k,
                    root_phase: t.phase.to_c64(),
                    log_term: t.log.to_c64(),
                    contribution: t.contribution.to_c64(),
                })
                .collect(),
            tail_sum: self.tail.to_c64(),
            method: self.method,
        }
    }
}

fn check_input(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("z = {z} is not finite")))
    }
}

fn finite(value: Cdd, what: &str) -> Result<Complex64> {
    let v = value.to_c64();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("{what} overflowed")))
    }
}

/// `-phase * Log(1 - x)` with the branch-point guard.
fn log_term(k: u64, phase: Cdd, x: Cdd) -> Result<TermDd> {
    let u = CDD_ONE - x;
    if u.hi().norm() < BRANCH_GUARD {
        return Err(Error::BranchPoint(format!(
            "log argument 1 - z^(1/q) e^(2 pi i k/q) vanishes at k = {k}"
        )));
    }
    let log = u.ln();
    Ok(TermDd { k, phase, log, contribution: -(phase * log) })
}

/// Sums contributions pairing `k` with `q - k`, so exact conjugate pairs
/// cancel their imaginary parts exactly.
fn paired_sum(terms: &[TermDd]) -> Cdd {
    let q = terms.len();
    let mut total = terms[0].contribution;
    for k in 1..=q / 2 {
        let j = q - k;
        if k < j {
            total = total + (terms[k].contribution + terms[j].contribution);
        } else {
            total = total + terms[k].contribution;
        }
    }
    total
}

/// `-sum_{k=0}^{q-1} e^{-2 pi i p k/q} Log(1 - w e^{2 pi i k/q})` with `w = z^{1/q}`.
fn root_log_sum(w: Cdd, p: u64, q: u64, route: Route) -> Result<(Cdd, Vec<TermDd>, bool)> {
    let half = q == 2 && route == Route::Auto;
    let terms = if half {
        // 2 atanh(w) = Log(1 + w) - Log(1 - w)
        vec![log_term(0, CDD_ONE, w)?, log_term(1, -CDD_ONE, -w)?]
    } else {
        let roots = roots_of_unity(q);
        (0..q)
            .map(|k| {
                let phase_index = (q - ((p as u128 * k as u128) % q as u128) as u64) % q;
                log_term(k, roots[phase_index as usize], w * roots[k as usize])
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok((paired_sum(&terms), terms, half))
}

pub(crate) fn beta_pos_dd(nu: &PosDecomposition, z: Cdd, route: Route) -> Result<(Cdd, TraceDd)> {
    let n = nu.n();
    if nu.integer_boundary() {
        if route == Route::RootsOfUnity {
            return Err(Error::InvalidParameter(
                "integer nu has no roots-of-unity form; it is the logarithmic limit case".into(),
            ));
        }
        let term = log_term(0, CDD_ONE, z)?;
        let mut tail = CDD_ZERO;
        let mut zk = CDD_ONE;
        for k in 1..=n {
            zk = zk * z;
            tail = tail - zk.scale(Dd::ratio(1.0, k as f64));
        }
        let value = term.contribution + tail;
        return Ok((value, TraceDd { terms: vec![term], tail, method: ReductionMethod::IntegerLog }));
    }

    let (p, q) = (nu.p(), nu.q());
    let w = z.principal_root(q);
    let (log_sum, terms, half) = root_log_sum(w, p, q, route)?;
    let wq = w.powu(q);
    let mut power = w.powu(p);
    let mut tail = CDD_ZERO;
    for k in 0..n {
        // z^{k+p/q} / (k + p/q) = w^{qk+p} q / (qk + p)
        tail = tail - power.scale(Dd::ratio(q as f64, (q * k + p) as f64));
        power = power * wq;
    }
    let method = if half { ReductionMethod::HalfAtanh } else { ReductionMethod::RootsOfUnityPos };
    Ok((log_sum + tail, TraceDd { terms, tail, method }))
}

pub(crate) fn beta_neg_dd(nu: &NegDecomposition, z: Cdd, route: Route) -> Result<(Cdd, TraceDd)> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (n, p, q) = (nu.n(), nu.p(), nu.q());
    let w = z.principal_root(q);
    let (log_sum, terms, half) = root_log_sum(w, p, q, route)?;
    let w_inv_q = w.powu(q).recip();
    let mut power = w.powu(p) * w_inv_q;
    let mut tail = CDD_ZERO;
    for k in 1..=n {
        // z^{p/q-k} / (p/q - k) = w^{p-qk} q / (p - qk)
        tail = tail + power.scale(Dd::ratio(q as f64, p as f64 - (q * k) as f64));
        power = power * w_inv_q;
    }
    let method = if half { ReductionMethod::HalfAtanh } else { ReductionMethod::RootsOfUnityNeg };
    Ok((log_sum + tail, TraceDd { terms, tail, method }))
}

/// `z^nu` for `nu > 0` in double-double, on the same principal branch as the
/// reduction (`(z^{1/q})^{qn+p}`).
fn z_pow_nu_dd(nu: &PosDecomposition, z: Cdd) -> Cdd {
    if nu.integer_boundary() {
        z.powu(nu.n() + 1)
    } else {
        z.principal_root(nu.q()).powu(nu.q() * nu.n() + nu.p())
    }
}

pub(crate) fn lerch_dd(nu: &PosDecomposition, z: Cdd) -> Result<Cdd> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (b, _) = beta_pos_dd(nu, z, Route::Auto)?;
    Ok(b / z_pow_nu_dd(nu, z))
}

/// `B(nu,0,z)` for `nu > 0`, with the integer and half-integer fast paths.
pub fn reduce_beta_pos(nu: &PosDecomposition, z: ComplexValue) -> Result<(ComplexValue, ReductionTrace)> {
    check_input(z)?;
    let (value, trace) = beta_pos_dd(nu, Cdd::from(z), Route::Auto)?;
    Ok((finite(value, "B(nu,0,z)")?, trace.rounded()))
}

/// `B(nu,0,z)` for fractional `nu > 0` through the general roots-of-unity sum,
/// bypassing the half-integer fast path.
pub fn reduce_beta_pos_roots(nu: &PosDecomposition, z: ComplexValue) -> Result<(ComplexValue, ReductionTrace)> {
    check_input(z)?;
    let (value, trace) = beta_pos_dd(nu, Cdd::from(z), Route::RootsOfUnity)?;
    Ok((finite(value, "B(nu,0,z)")?, trace.rounded()))
}

/// `B(nu,0,z)` for non-integer `nu < 0`.
pub fn reduce_beta_neg(nu: &NegDecomposition, z: ComplexValue) -> Result<(ComplexValue, ReductionTrace)> {
    check_input(z)?;
    let (value, trace) = beta_neg_dd(nu, Cdd::from(z), Route::Auto)?;
    Ok((finite(value, "B(nu,0,z)")?, trace.rounded()))
}

/// As [`reduce_beta_neg`], always using the general roots-of-unity sum.
pub fn reduce_beta_neg_roots(nu: &NegDecomposition, z: ComplexValue) -> Result<(ComplexValue, ReductionTrace)> {
    check_input(z)?;
    let (value, trace) = beta_neg_dd(nu, Cdd::from(z), Route::RootsOfUnity)?;
    Ok((finite(value, "B(nu,0,z)")?, trace.rounded()))
}

/// `B(nu,0,z)` for any rational `nu` that is not a non-positive integer.
pub fn reduce_beta(nu: &RationalNu, z: ComplexValue) -> Result<ComplexValue> {
    if nu.is_positive() {
        reduce_beta_pos(&decompose_pos(nu)?, z).map(|(v, _)| v)
    } else {
        reduce_beta_neg(&decompose_neg(nu)?, z).map(|(v, _)| v)
    }
}

/// `Phi(z,1,nu) = z^{-nu} B(nu,0,z)` for `nu > 0`.
pub fn lerch_reduce(nu: &PosDecomposition, z: ComplexValue) -> Result<ComplexValue> {
    check_input(z)?;
    finite(lerch_dd(nu, Cdd::from(z))?, "Phi(z,1,nu)")
}

/// Principal `z^nu` in double precision; integer exponents use repeated
/// multiplication.
pub(crate) fn principal_pow(z: Complex64, nu: &RationalNu) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return if nu.is_positive() { Ok(z) } else { Err(Error::ZeroArgument) };
    }
    if nu.is_integer() {
        let e = i32::try_from(nu.numer())
            .map_err(|_| Error::InvalidParameter(format!("exponent {nu} too large")))?;
        Ok(z.powi(e))
    } else {
        Ok(z.powf(nu.to_f64()))
    }
}

/// `B(nu,m+1,z) = z^nu sum_{k=0}^{m} C(m,k) (-z)^k / (k + nu)`.
pub fn beta_mu_posint(nu: &RationalNu, m: u64, z: ComplexValue) -> Result<ComplexValue> {
    beta_mu_posint_traced(nu, m, z).map(|(v, _)| v)
}

pub fn beta_mu_posint_traced(nu: &RationalNu, m: u64, z: ComplexValue) -> Result<(ComplexValue, ReductionTrace)> {
    check_input(z)?;
    if m > MAX_POLY_DEGREE {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds {MAX_POLY_DEGREE}")));
    }
    if nu.is_integer() && nu.numer() <= 0 && nu.numer().unsigned_abs() <= m {
        return Err(Error::PoleInSum(nu.numer().unsigned_abs()));
    }
    let prefactor = principal_pow(z, nu)?;
    let nu_f = nu.to_f64();
    let mut acc = NeumaierSum::new();
    // C(m,k) (-z)^k built by its ratio recurrence.
    let mut coeff = Complex64::new(1.0, 0.0);
    acc.add(coeff / nu_f);
    for k in 1..=m {
        coeff = coeff * (-z) * ((m - k + 1) as f64 / k as f64);
        acc.add(coeff / (k as f64 + nu_f));
    }
    let value = prefactor * acc.value();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite(format!("B({nu},{},z) overflowed", m + 1)));
    }
    let trace = ReductionTrace { terms: Vec::new(), tail_sum: value, method: ReductionMethod::PolynomialMu };
    Ok((value, trace))
}

/// `B(nu,mu,z)` for integer `mu >= 0`.
pub fn beta_int_mu(nu: &RationalNu, mu: u64, z: ComplexValue) -> Result<ComplexValue> {
    if mu == 0 {
        reduce_beta(nu, z)
    } else {
        beta_mu_posint(nu, mu - 1, z)
    }
}

/// Residual of `B(nu,mu,z) = B(nu+1,mu,z) + B(nu,mu+1,z)`, scaled by
/// `max(1, |B(nu,mu,z)|)`.
pub fn connection_check(nu: &RationalNu, mu: u64, z: ComplexValue) -> Result<f64> {
    let lhs = beta_int_mu(nu, mu, z)?;
    let shifted = beta_int_mu(&nu.add_integer(1)?, mu, z)?;
    let raised = beta_int_mu(nu, mu + 1, z)?;
    Ok((lhs - shifted - raised).norm() / lhs.norm().max(1.0))
}
