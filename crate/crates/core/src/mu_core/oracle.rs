//! Brute-force summation of the defining series
//!
//! ```text
//! <(a†)^r a^r> = (1 - e^{-α}) Σ_{n≥0} ∏_{l<r} φ_μ(n-l) e^{-αn}
//! ```
//!
//! with no partial fractions and no Lerch functions, so it checks the
//! closed form along an independent path. Terms with `n < r` vanish because
//! one factor is `φ_μ(0) = 0`. Every factor satisfies `φ_μ(x) <= min(x, 1/μ)`
//! for `x >= 0`, which gives the tail bound.

use super::types::{CorrelationResult, DeformationMu, Method};
use crate::error::{Error, Result};

/// Term cap for the brute-force series.
pub const DEFAULT_ORACLE_MAX_TERMS: u64 = 10_000_000;

/// When to stop adding terms.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Stop {
    /// Normalized tail at most this.
    Absolute(f64),
    /// Normalized tail at most this fraction of the partial sum.
    Relative(f64),
}

pub(crate) struct OracleSum {
    pub value: f64,
    pub error_bound: f64,
}

/// `μ`-bracket `x/(1+μx)`.
#[inline]
pub(crate) fn bracket(x: f64, mu: f64) -> f64 {
    x / (1.0 + mu * x)
}

/// Natural log of an upper bound on `Σ_{n>N} ∏ φ_μ(n-l) z^n`.
fn log_tail_bound(n_last: u64, r: u32, mu: f64, alpha: f64) -> f64 {
    let rf = f64::from(r);
    let next = n_last as f64 + 1.0;
    // Σ_{n>N} n^r z^n, geometric once the term ratio drops below one.
    let ratio = ((next + 1.0) / next).powf(rf) * (-alpha).exp();
    let bose = if ratio < 1.0 { rf * next.ln() - alpha * next - (1.0 - ratio).ln() } else { f64::INFINITY };
    // Σ_{n>N} μ^{-r} z^n
    let capped = if mu > 0.0 { -rf * mu.ln() - alpha * next - (-(-alpha).exp_m1()).ln() } else { f64::INFINITY };
    bose.min(capped)
}

pub(crate) fn oracle_sum(mu: f64, alpha: f64, r: u32, stop: Stop, max_terms: u64) -> Result<OracleSum> {
    let weight = -(-alpha).exp_m1();
    let mut sum = 0.0;
    let mut n = u64::from(r);
    let mut log_tail = f64::INFINITY;
    while n < max_terms {
        let nf = n as f64;
        let product: f64 = (0..r).map(|l| bracket(nf - f64::from(l), mu)).product();
        sum += product * (-alpha * nf).exp();
        log_tail = log_tail_bound(n, r, mu, alpha);
        let tail = weight * log_tail.exp();
        let done = match stop {
            Stop::Absolute(tol) => tail <= tol,
            Stop::Relative(rel) => sum > 0.0 && tail <= rel * weight * sum,
        };
        n += 1;
        if done || (sum == 0.0 && log_tail.exp() == 0.0) {
            let value = weight * sum;
            let rounding = value * (nf + 2.0 * f64::from(r) + 4.0) * f64::EPSILON;
            return Ok(OracleSum { value, error_bound: tail + rounding });
        }
    }
    let tol = match stop {
        Stop::Absolute(t) => t,
        Stop::Relative(t) => t * weight * sum,
    };
    Err(Error::NonConvergence { terms: n, tail_bound: weight * log_tail.exp(), tol })
}

pub(crate) fn check_oracle_args(mu: DeformationMu, alpha: f64, r: u32) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    if r < 1 {
        return Err(Error::domain("order r must be at least 1"));
    }
    if let Some(k) = mu.series_pole(r) {
        // n = l - k is the offending summand.
        return Err(Error::Pole { mu: mu.value(), n: 0.0, l: k });
    }
    Ok(())
}

/// The normalized r-th moment by direct summation, to absolute `tol`.
pub fn oracle_moment(mu: DeformationMu, alpha: f64, r: u32, tol: f64) -> Result<CorrelationResult> {
    check_oracle_args(mu, alpha, r)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let s = oracle_sum(mu.value(), alpha, r, Stop::Absolute(tol), DEFAULT_ORACLE_MAX_TERMS)?;
    Ok(CorrelationResult::new(s.value, s.error_bound, Method::Oracle))
}

/// The normalized r-th moment by direct summation to full relative
/// accuracy.
pub(crate) fn oracle_moment_relative(mu: f64, alpha: f64, r: u32) -> Result<OracleSum> {
    oracle_sum(mu, alpha, r, Stop::Relative(1e-17), DEFAULT_ORACLE_MAX_TERMS)
}
