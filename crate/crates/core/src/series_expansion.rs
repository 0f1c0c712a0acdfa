//! Taylor expansion in μ of the generic series
//!
//! ```text
//! Σ_{n≥0} e^{-αn} / (1 + μ(n-l)) = Σ_s c_s(l) μ^s
//! ```
//!
//! with `c_s(l) = (-1)^s Σ_n (n-l)^s e^{-αn}`. In closed form, with
//! `x = e^α`,
//!
//! ```text
//! c_s(l) = δ_{s0} x^{-l} + x^{-l} Σ_{j=1}^{l} j^s x^j
//!        + x^{-l} (-1)^s Σ_{j=0}^{s} j! {s+1, j+1} (x-1)^{-(j+1)}.
//! ```
//!
//! The resulting expansions of the moment sums are asymptotic only: the
//! coefficients grow factorially and the series diverge for every μ > 0.
//! [`divergence_diagnostic`] shows this numerically.

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::mu_core::DeformationMu;
use crate::partial_fraction::a_coeffs;
use crate::special_fn::combinatorics::stirling_weights;

/// `c_s(l)` at a given α, with its exact integer structure.
#[derive(Debug, Clone, PartialEq)]
pub struct CCoefficient {
    pub s: usize,
    pub l: usize,
    pub alpha: f64,
    pub value: f64,
    /// Signed integer weights of `(e^α - 1)^{-(j+1)}`, `j = 0..=s`.
    pub stirling_part: Vec<BigInt>,
    /// `δ_{s0} e^{-αl} + Σ_{j=1}^{l} j^s e^{-α(l-j)}`.
    pub finite_part: f64,
}

impl CCoefficient {
    /// Recomputes the value from `stirling_part` and `finite_part`.
    pub fn reconstruct(&self) -> f64 {
        let y = 1.0 / self.alpha.exp_m1();
        let shift = (-self.alpha * self.l as f64).exp();
        let mut power = y;
        let mut acc = 0.0;
        for w in &self.stirling_part {
            acc += w.to_f64().unwrap_or(f64::NAN) * power;
            power *= y;
        }
        self.finite_part + shift * acc
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must be positive, got {alpha}")))
    }
}

/// `c_s(l)` from the Stirling-number closed form.
pub fn c_coeff(s: usize, l: usize, alpha: f64) -> Result<CCoefficient> {
    check_alpha(alpha)?;
    let sign = if s.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
    let stirling_part: Vec<BigInt> = stirling_weights(s).into_iter().map(|w| BigInt::from_biguint(sign, w)).collect();

    let lf = l as f64;
    let mut finite_part = if s == 0 { (-alpha * lf).exp() } else { 0.0 };
    for j in 1..=l {
        finite_part += (j as f64).powi(s as i32) * (-alpha * (lf - j as f64)).exp();
    }

    // Horner in y = 1/(e^α - 1) from the highest power down.
    let y = 1.0 / alpha.exp_m1();
    let mut horner = 0.0;
    for w in stirling_part.iter().rev() {
        horner = horner * y + w.to_f64().unwrap_or(f64::NAN);
    }
    let value = finite_part + (-alpha * lf).exp() * horner * y;

    Ok(CCoefficient { s, l, alpha, value, stirling_part, finite_part })
}

/// Tail bound for `Σ_{n>N} n^s e^{-αn}`, or infinity if the terms are
/// still growing at `N`.
fn power_tail_bound(n_max: u64, s: usize, alpha: f64) -> f64 {
    let next = n_max as f64 + 1.0;
    let ratio = ((next + 1.0) / next).powi(s as i32) * (-alpha).exp();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    (s as f64 * next.ln() - alpha * next - (1.0 - ratio).ln()).exp()
}

/// Brute-force `c_s(l) = (-1)^s Σ_{n=0}^{n_max} (n-l)^s e^{-αn}`.
///
/// Fails if the neglected tail may exceed `1e-12` (relative to the sum when
/// that is larger than one).
pub fn series_coeff_oracle(s: usize, l: usize, alpha: f64, n_max: u64) -> Result<f64> {
    check_alpha(alpha)?;
    let sign = if s.is_multiple_of(2) { 1.0 } else { -1.0 };
    let sum: f64 = (0..=n_max)
        .map(|n| {
            let d = n as f64 - l as f64;
            d.powi(s as i32) * (-alpha * n as f64).exp()
        })
        .sum();
    let tail = power_tail_bound(n_max, s, alpha);
    let tol = 1e-12 * sum.abs().max(1.0);
    if tail > tol {
        return Err(Error::NonConvergence { terms: n_max + 1, tail_bound: tail, tol });
    }
    Ok(sign * sum)
}

/// Smallest `n_max` for which [`series_coeff_oracle`] accepts its tail.
pub fn oracle_terms_needed(s: usize, alpha: f64) -> u64 {
    let mut n = ((s as f64) / alpha).ceil() as u64 + 1;
    while power_tail_bound(n, s, alpha) > 1e-14 {
        n = n * 2 + 1;
    }
    n
}

fn check_mu(mu: DeformationMu) -> Result<f64> {
    if mu.is_undeformed() {
        return Err(Error::domain("the expansion in mu requires mu > 0"));
    }
    Ok(mu.value())
}

/// `Σ_l A_l^{(r)}(μ) c_s(l) μ^s`: the s-th order term of the moment
/// expansion, without the `μ^{-r}` prefactor.
fn expansion_term(a: &[f64], s: usize, alpha: f64, mu: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (l, weight) in a.iter().enumerate() {
        acc += weight * c_coeff(s, l, alpha)?.value;
    }
    Ok(acc * mu.powi(s as i32))
}

/// Order-`order` truncation of the expansion of the unnormalized sum
/// `Σ_n ∏_{l<r} φ_μ(n-l) e^{-αn}`:
///
/// ```text
/// μ^{-r} (1 - e^{-α})^{-1} + μ^{-r} Σ_{s<=order} Σ_{l<r} A_l^{(r)}(μ) c_s(l) μ^s
/// ```
pub fn taylor_moment(mu: DeformationMu, alpha: f64, r: u32, order: usize) -> Result<f64> {
    let m = check_mu(mu)?;
    check_alpha(alpha)?;
    let a = a_coeffs(r, m)?;
    let prefactor = m.powi(-(r as i32));
    let mut sum = -1.0 / (-alpha).exp_m1();
    for s in 0..=order {
        sum += expansion_term(a.values(), s, alpha, m)?;
    }
    Ok(prefactor * sum)
}

/// One row of [`divergence_diagnostic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceEntry {
    pub s: usize,
    /// [`taylor_moment`] truncated at order `s`.
    pub partial_sum: f64,
    /// `|Σ_l A_l^{(r)} c_s(l) μ^s|`.
    pub term_magnitude: f64,
    /// Set on a terminal row whose term is no longer finite.
    pub overflow: bool,
}

/// Partial sums and term sizes of the moment expansion for `s = 0..=s_max`.
///
/// Stops early, with a final `overflow` row, if a term leaves the `f64`
/// range.
pub fn divergence_diagnostic(mu: DeformationMu, alpha: f64, r: u32, s_max: usize) -> Result<Vec<DivergenceEntry>> {
    let m = check_mu(mu)?;
    check_alpha(alpha)?;
    let a = a_coeffs(r, m)?;
    let prefactor = m.powi(-(r as i32));
    let mut sum = -1.0 / (-alpha).exp_m1();
    let mut out = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let term = expansion_term(a.values(), s, alpha, m)?;
        if !term.is_finite() {
            out.push(DivergenceEntry { s, partial_sum: f64::NAN, term_magnitude: f64::INFINITY, overflow: true });
            break;
        }
        sum += term;
        out.push(DivergenceEntry { s, partial_sum: prefactor * sum, term_magnitude: term.abs(), overflow: false });
    }
    Ok(out)
}

/// The order from which term magnitudes increase strictly through the end
/// of the table, or `None` if the last step does not increase.
pub fn divergence_onset(entries: &[DivergenceEntry]) -> Option<usize> {
    let finite: Vec<&DivergenceEntry> = entries.iter().filter(|e| !e.overflow).collect();
    let mut k = finite.len().checked_sub(1)?;
    while k > 0 && finite[k - 1].term_magnitude < finite[k].term_magnitude {
        k -= 1;
    }
    (k + 1 < finite.len()).then(|| finite[k].s)
}

/// Whether the last `window` finite term magnitudes increase strictly.
pub fn eventually_increasing(entries: &[DivergenceEntry], window: usize) -> bool {
    let finite: Vec<f64> = entries.iter().filter(|e| !e.overflow).map(|e| e.term_magnitude).collect();
    if finite.len() < window || window < 2 {
        return false;
    }
    finite[finite.len() - window..].windows(2).all(|w| w[0] < w[1])
}
