//! Simple-fraction expansion of the product of μ-brackets
//!
//! ```text
//! ∏_{l=0}^{r-1} (n-l)/(1+μ(n-l)) = μ^{-r} + μ^{-r} Σ_{l=0}^{r-1} A_l^{(r)}(μ) / (1+μ(n-l))
//! ```
//!
//! The weights `A_l^{(r)}` follow from the recurrence
//!
//! ```text
//! A_l^{(r+1)} = A_l^{(r)} (1 + 1/(μ(r-l))),        l < r
//! A_r^{(r+1)} = -1 - Σ_{l<r} A_l^{(r)} / (μ(r-l))
//! ```
//!
//! seeded by `A_0^{(1)} = -1`. They grow like `μ^{-(r-1)}`, so any sum that
//! uses them cancels heavily for small μ. The multiprecision variant exists
//! for those sums.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// The weights `A_l^{(r)}(μ)`, `l = 0..r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ACoefficients {
    order: u32,
    mu: f64,
    values: Vec<f64>,
}

impl ACoefficients {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn check_args(r: u32, mu: f64) -> Result<()> {
    if r < 1 {
        return Err(Error::domain("partial-fraction order r must be at least 1"));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::domain(format!("partial-fraction coefficients need mu > 0, got {mu}")));
    }
    Ok(())
}

/// `A_l^{(r)}(μ)` in double precision.
pub fn a_coeffs(r: u32, mu: f64) -> Result<ACoefficients> {
    check_args(r, mu)?;
    let mut values = vec![-1.0];
    for k in 1..r {
        let mut last = -1.0;
        for (l, a) in values.iter_mut().enumerate() {
            let w = mu * f64::from(k - l as u32);
            last -= *a / w;
            *a *= 1.0 + 1.0 / w;
        }
        values.push(last);
    }
    Ok(ACoefficients { order: r, mu, values })
}

/// `A_l^{(r)}(μ)` at precision `prec`, with μ taken exactly.
pub(crate) fn a_coeffs_mp(r: u32, mu: f64, prec: u32) -> Vec<Float> {
    let mut values = vec![Float::with_val(prec, -1)];
    for k in 1..r {
        let mut last = Float::with_val(prec, -1);
        for (l, a) in values.iter_mut().enumerate() {
            let w = Float::with_val(prec, mu) * (k - l as u32);
            last -= Float::with_val(prec, &*a / &w);
            let factor = Float::with_val(prec, 1) + w.recip();
            *a *= factor;
        }
        values.push(last);
    }
    values
}

/// LHS minus RHS of the expansion identity at a real `n`.
///
/// Evaluated in multiprecision wide enough to absorb the `μ^{-(2r-1)}`
/// cancellation on the right, then rounded.
pub fn expansion_residual(r: u32, mu: f64, n: f64) -> Result<f64> {
    check_args(r, mu)?;
    if !n.is_finite() {
        return Err(Error::domain(format!("n must be finite, got {n}")));
    }
    for l in 0..r {
        let x = n - f64::from(l);
        let d = 1.0 + mu * x;
        if d.abs() <= 1e-12 * (mu * x).abs().max(1.0) {
            return Err(Error::Pole { mu, n, l });
        }
    }
    let amplification_bits = (2 * r) as f64 * mu.log2().abs() + (n.abs() + 2.0).log2() * r as f64;
    let prec = 128 + amplification_bits.ceil() as u32;

    let muf = Float::with_val(prec, mu);
    let nf = Float::with_val(prec, n);
    let one = Float::with_val(prec, 1);
    let mut lhs = one.clone();
    let mut fractions = one.clone();
    for (l, a) in a_coeffs_mp(r, mu, prec).into_iter().enumerate() {
        let x = Float::with_val(prec, &nf - l as u32);
        let d = Float::with_val(prec, &muf * &x) + 1u32;
        lhs *= Float::with_val(prec, &x / &d);
        fractions += a / d;
    }
    let scale = Float::with_val(prec, muf.pow(r)).recip();
    let rhs = fractions * scale;
    Ok((lhs - rhs).to_f64())
}
