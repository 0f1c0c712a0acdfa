//! Multiprecision evaluation of the Lerch-transcendent representation.
//!
//! For μ > 0 the normalized sums are written as
//!
//! ```text
//! X_r = 1 + μ^{-1} (1 - e^{-α}) Σ_{l<r} A_l^{(r)}(μ) Φ(e^{-α}, 1, 1/μ - l)
//! ```
//!
//! so that `<φ(N)> = X_1/μ`, `<(a†)^r a^r> = X_r/μ^r` and the intercept is
//! `X_r / X_1^r - 1`. The individual terms of `X_r` are of order `μ^{-(r-1)}`
//! while `X_r` itself is of order `μ^r e^{-rα}`, so the working precision is
//! chosen from the observed cancellation and then confirmed by re-running
//! 64 bits wider.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::partial_fraction::a_coeffs_mp;
use crate::special_fn::lerch::lerch_phi_s1_mp;

const START_PREC: u32 = 128;
const MAX_PREC: u32 = 1 << 14;
const GUARD_BITS: f64 = 72.0;
const CONFIRM_BITS: u32 = 64;
const MAX_LERCH_TERMS: u64 = 10_000_000;

/// Relative accuracy demanded of every multiprecision result before it is
/// rounded to `f64`.
pub(crate) const TARGET_REL: f64 = 1.0 / (1u64 << 60) as f64;

/// A value computed at some precision, with the number of bits lost to
/// cancellation.
pub(crate) struct Evaluation {
    pub value: Float,
    pub lost_bits: f64,
}

/// `X_r` at precision `prec`.
pub(crate) fn scaled_moment(mu: f64, alpha: f64, r: u32, prec: u32) -> Result<Evaluation> {
    let z = Float::with_val(prec, -alpha).exp();
    let one_minus_z = -Float::with_val(prec, -alpha).exp_m1();
    let inv_mu = Float::with_val(prec, mu).recip();
    let base = Float::with_val(prec, &inv_mu * &one_minus_z);

    let mut x = Float::with_val(prec, 1);
    let mut magnitude = Float::with_val(prec, 1);
    for (l, a) in a_coeffs_mp(r, mu, prec).into_iter().enumerate() {
        let shift = Float::with_val(prec, &inv_mu - l as u32);
        let shift_approx = shift.to_f64();
        let (phi, _) = lerch_phi_s1_mp(&z, -alpha, &shift, shift_approx, MAX_LERCH_TERMS)?;
        let term = Float::with_val(prec, &base * &a) * phi;
        magnitude += term.clone().abs();
        x += term;
    }
    Ok(Evaluation { lost_bits: lost_bits(&magnitude, &x), value: x })
}

fn lost_bits(magnitude: &Float, value: &Float) -> f64 {
    if value.is_zero() {
        return f64::INFINITY;
    }
    let ratio = Float::with_val(64, magnitude / &*value.as_abs());
    ratio.to_f64().log2().max(0.0)
}

/// Runs `eval` at increasing precision until two evaluations 64 bits apart
/// agree to [`TARGET_REL`]. Returns the wider value and the relative
/// difference observed.
pub(crate) fn converge<F>(eval: F) -> Result<(Float, f64)>
where
    F: Fn(u32) -> Result<Evaluation>,
{
    let mut prec = START_PREC;
    loop {
        let first = eval(prec)?;
        let needed = first.lost_bits + GUARD_BITS;
        if needed > f64::from(prec) {
            prec = if needed.is_finite() { round_up_prec(needed) } else { prec * 2 };
            if prec > MAX_PREC {
                return Err(precision_exhausted(first.lost_bits));
            }
            continue;
        }
        let wider = eval(prec + CONFIRM_BITS)?;
        let rel = if wider.value.is_zero() {
            f64::INFINITY
        } else {
            let diff = Float::with_val(64, &first.value - &wider.value);
            Float::with_val(64, diff / &wider.value).abs().to_f64()
        };
        if rel <= TARGET_REL {
            return Ok((wider.value, rel.min(1.0)));
        }
        prec *= 2;
        if prec > MAX_PREC {
            return Err(precision_exhausted(first.lost_bits));
        }
    }
}

fn round_up_prec(bits: f64) -> u32 {
    let bits = bits.min(f64::from(MAX_PREC) * 2.0).ceil() as u32;
    bits.div_ceil(64) * 64
}

fn precision_exhausted(lost_bits: f64) -> Error {
    Error::NonConvergence {
        terms: u64::from(MAX_PREC),
        tail_bound: 2f64.powf(lost_bits - f64::from(MAX_PREC)),
        tol: TARGET_REL,
    }
}

/// `X_r` to full double accuracy, with its relative error bound.
pub(crate) fn scaled_moment_converged(mu: f64, alpha: f64, r: u32) -> Result<(Float, f64)> {
    converge(|prec| scaled_moment(mu, alpha, r, prec))
}

/// `X_r / X_1^r` to full double accuracy.
pub(crate) fn intercept_ratio(mu: f64, alpha: f64, r: u32) -> Result<(Float, f64)> {
    converge(|prec| {
        let xr = scaled_moment(mu, alpha, r, prec)?;
        let x1 = scaled_moment(mu, alpha, 1, prec)?;
        let denom = x1.value.pow(r);
        Ok(Evaluation { value: xr.value / denom, lost_bits: xr.lost_bits.max(x1.lost_bits + f64::from(r).log2()) })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_particle_sum_matches_direct_series() {
        // X_1 = μ (1 - z) Σ n/(1+μn) z^n
        let (mu, alpha) = (0.1, 1.0);
        let (x1, rel) = scaled_moment_converged(mu, alpha, 1).unwrap();
        let z: f64 = (-alpha).exp();
        let direct: f64 = (0..400)
            .map(|n| {
                let n = n as f64;
                n / (1.0 + mu * n) * z.powf(n)
            })
            .sum::<f64>()
            * mu
            * (1.0 - z);
        assert!(rel < 1e-15);
        assert!((x1.to_f64() - direct).abs() < 1e-14 * direct);
    }

    #[test]
    fn precision_grows_with_cancellation() {
        let coarse = scaled_moment(0.05, 8.0, 5, 128).unwrap();
        assert!(coarse.lost_bits > 60.0, "lost {}", coarse.lost_bits);
        let (x, _) = scaled_moment_converged(0.05, 8.0, 5).unwrap();
        assert!(x.to_f64() > 0.0);
    }
}
