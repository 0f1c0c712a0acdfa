//! The p,q-deformed Bose gas, for comparison with the μ-deformed one.
//!
//! With `x = e^α` the r-th moment is
//! `[r]_{p,q}! (x-1) / ∏_{j=0}^{r} (x - p^j q^{r-j})`, which reduces to the
//! Bose value `r!/(x-1)^r` at `p = q = 1`. The intercept tends to
//! `[r]_{p,q}! - 1` at large momentum, while the μ-gas limit carries an
//! extra factor `(1+μ)^r` because `[1]_μ = 1/(1+μ)` instead of 1.

use crate::error::{Error, Result};
use crate::mu_core::{intercept_asymptotic, mu_factorial, DeformationMu};

/// Deformation parameters `0 < q <= p <= 1`, stored in canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQParams {
    p: f64,
    q: f64,
}

impl PQParams {
    /// Accepts either order; the larger value becomes `p`.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(v.is_finite() && v > 0.0 && v <= 1.0) {
                return Err(Error::domain(format!("{name} = {v} must lie in (0, 1]")));
            }
        }
        Ok(Self { p: p.max(q), q: p.min(q) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// `[n]_{p,q} = (p^n - q^n)/(p - q)`, evaluated as `Σ_{j<n} p^j q^{n-1-j}`,
/// which stays exact as `q -> p` and equals `n p^{n-1}` at `p = q`.
pub fn pq_bracket(n: u32, pq: PQParams) -> f64 {
    (0..n).map(|j| pq.p.powi(j as i32) * pq.q.powi((n - 1 - j) as i32)).sum()
}

/// `[r]_{p,q}! = [1][2]...[r]`.
pub fn pq_factorial(r: u32, pq: PQParams) -> f64 {
    (1..=r).map(|j| pq_bracket(j, pq)).product()
}

fn check(alpha: f64, r: u32) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    if r < 1 {
        return Err(Error::domain("order r must be at least 1"));
    }
    Ok(())
}

/// `x - c` for `x = e^α`, without cancellation when `c` is close to one.
fn exp_minus(alpha: f64, c: f64) -> f64 {
    alpha.exp_m1() + (1.0 - c)
}

fn denominator(pq: PQParams, alpha: f64, r: u32) -> Result<f64> {
    let mut d = 1.0;
    for j in 0..=r {
        let c = pq.p.powi(j as i32) * pq.q.powi((r - j) as i32);
        let f = exp_minus(alpha, c);
        if !(f > 0.0) {
            return Err(Error::domain(format!("e^alpha - p^{j} q^{} = {f} is not positive", r - j)));
        }
        d *= f;
    }
    Ok(d)
}

/// `<(A†)^r A^r> = [r]_{p,q}! (e^α - 1) / ∏_{j=0}^{r} (e^α - p^j q^{r-j})`.
pub fn pq_moment(pq: PQParams, alpha: f64, r: u32) -> Result<f64> {
    check(alpha, r)?;
    Ok(pq_factorial(r, pq) * alpha.exp_m1() / denominator(pq, alpha, r)?)
}

/// The intercept assembled as `pq_moment(r) / pq_moment(1)^r - 1`.
pub fn pq_intercept(pq: PQParams, alpha: f64, r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::domain(format!("intercepts are defined for r >= 2, got r = {r}")));
    }
    let num = pq_moment(pq, alpha, r)?;
    let den = pq_moment(pq, alpha, 1)?;
    if den <= 0.0 {
        return Err(Error::domain("one-particle p,q distribution underflows"));
    }
    Ok(num / den.powi(r as i32) - 1.0)
}

/// The intercept in its simplified form
/// `[r]! (x-p)^r (x-q)^r / ((x-1)^{r-1} ∏_j (x - q^{r-j} p^j)) - 1`.
pub fn pq_intercept_simplified(pq: PQParams, alpha: f64, r: u32) -> Result<f64> {
    check(alpha, r)?;
    if r < 2 {
        return Err(Error::domain(format!("intercepts are defined for r >= 2, got r = {r}")));
    }
    let ri = r as i32;
    // Group factors pairwise to stay in range for large α.
    let mut v = pq_factorial(r, pq) * exp_minus(alpha, pq.p).powi(ri) * exp_minus(alpha, pq.q).powi(ri);
    v /= alpha.exp_m1().powi(ri - 1);
    v /= denominator(pq, alpha, r)?;
    Ok(v - 1.0)
}

/// Large-momentum limit `[r]_{p,q}! - 1`.
pub fn pq_intercept_asymptotic(pq: PQParams, r: u32) -> f64 {
    pq_factorial(r, pq) - 1.0
}

/// Direct series `(1 - e^{-α}) Σ_n ∏_{l<r} [n-l]_{p,q} e^{-αn}`.
///
/// Uses `[n]_{p,q} <= n` for the tail bound.
pub fn pq_oracle_moment(pq: PQParams, alpha: f64, r: u32, tol: f64) -> Result<f64> {
    check(alpha, r)?;
    let weight = -(-alpha).exp_m1();
    let rf = f64::from(r);
    let mut sum = 0.0;
    for n in r.. {
        let product: f64 = (0..r).map(|l| pq_bracket(n - l, pq)).product();
        sum += product * (-alpha * f64::from(n)).exp();
        let next = f64::from(n) + 1.0;
        let ratio = ((next + 1.0) / next).powf(rf) * (-alpha).exp();
        if ratio < 1.0 {
            let tail = weight * (rf * next.ln() - alpha * next - (1.0 - ratio).ln()).exp();
            if tail <= tol * (weight * sum).max(f64::MIN_POSITIVE) {
                return Ok(weight * sum);
            }
        }
        if n > 10_000_000 {
            return Err(Error::NonConvergence { terms: u64::from(n), tail_bound: f64::NAN, tol });
        }
    }
    unreachable!()
}

/// `(λ_{μ,asympt} + 1) / [r]_μ!`, which equals `(1+μ)^r`.
pub fn mu_vs_pq_asymptotic_gap(mu: DeformationMu, r: u32) -> f64 {
    let ratio = (intercept_asymptotic(mu, r) + 1.0) / mu_factorial(r, mu);
    debug_assert!((ratio - (1.0 + mu.value()).powi(r as i32)).abs() <= 1e-12 * ratio);
    ratio
}
