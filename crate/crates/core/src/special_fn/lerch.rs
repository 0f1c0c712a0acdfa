//! The Lerch transcendent `Φ(z, 1, a) = Σ_{n≥0} z^n / (a + n)` on
//! `0 <= z < 1`, `a > 0`.
//!
//! Summation is direct. After the terms `0..=N` have been added the
//! remainder is bounded by the geometric tail
//!
//! ```text
//! Σ_{n>N} z^n/(a+n) <= z^{N+1} / ((a+N+1)(1-z))
//! ```
//!
//! and the loop stops as soon as that bound drops below the tolerance.

use rug::Float;

use crate::error::{Error, Result};

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default term cap.
pub const DEFAULT_MAX_TERMS: u64 = 100_000_000;

/// Arguments of `Φ(z, 1, a)` together with an absolute tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchQuery {
    z: f64,
    a: f64,
    tol: f64,
}

impl LerchQuery {
    pub fn new(z: f64, a: f64, tol: f64) -> Result<Self> {
        if !(z.is_finite() && (0.0..1.0).contains(&z)) {
            return Err(Error::domain(format!("Lerch argument z = {z} must satisfy 0 <= z < 1")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("Lerch argument a = {a} must be positive")));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::domain(format!("tolerance {tol} must be positive")));
        }
        Ok(Self { z, a, tol })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// A truncated Lerch sum with its certified remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchSum {
    pub value: f64,
    /// Upper bound on the neglected tail.
    pub tail_bound: f64,
    /// Number of terms added.
    pub terms: u64,
}

/// `Φ(z, 1, a)` to within `q.tol()`.
pub fn lerch_phi_s1(q: &LerchQuery) -> Result<f64> {
    lerch_phi_s1_with_limit(q, DEFAULT_MAX_TERMS).map(|s| s.value)
}

/// As [`lerch_phi_s1`] with an explicit term cap, returning the tail bound.
pub fn lerch_phi_s1_with_limit(q: &LerchQuery, max_terms: u64) -> Result<LerchSum> {
    let LerchQuery { z, a, tol } = *q;
    let one_minus_z = 1.0 - z;
    let mut sum = 0.0;
    let mut zn = 1.0;
    let mut tail_bound = f64::INFINITY;
    let mut n = 0u64;
    while n < max_terms {
        let nf = n as f64;
        sum += zn / (a + nf);
        zn *= z;
        n += 1;
        tail_bound = zn / ((a + nf + 1.0) * one_minus_z);
        if tail_bound <= tol {
            return Ok(LerchSum { value: sum, tail_bound, terms: n });
        }
    }
    Err(Error::NonConvergence { terms: n, tail_bound, tol })
}

/// Multiprecision `Φ(z, 1, a)` at the precision of `z`.
///
/// Stops once the tail bound falls below `2^-prec` of the running sum, so
/// the truncation error is relative and on the order of one rounding. `ln_z`
/// and `a_approx` are double-precision copies used only for the stopping
/// test. Returns the sum and the number of terms.
pub(crate) fn lerch_phi_s1_mp(z: &Float, ln_z: f64, a: &Float, a_approx: f64, max_terms: u64) -> Result<(Float, u64)> {
    let prec = z.prec();
    let ln_one_minus_z = (-ln_z.exp()).ln_1p();
    let ln_eps = -(prec as f64) * std::f64::consts::LN_2;

    let mut sum = Float::with_val(prec, 0);
    let mut zn = Float::with_val(prec, 1);
    let mut denom = Float::with_val(prec, a);
    let mut n = 0u64;
    let mut log_tail = f64::INFINITY;
    while n < max_terms {
        sum += Float::with_val(prec, &zn / &denom);
        zn *= z;
        denom += 1u32;
        n += 1;
        // ln of z^n / ((a+n)(1-z))
        log_tail = n as f64 * ln_z - (a_approx + n as f64).ln() - ln_one_minus_z;
        let ln_sum = sum.to_f64().ln();
        if zn.is_zero() || log_tail <= ln_sum + ln_eps {
            return Ok((sum, n));
        }
    }
    Err(Error::NonConvergence { terms: n, tail_bound: log_tail.exp(), tol: ln_eps.exp() })
}
