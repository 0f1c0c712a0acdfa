use rug::Float;

use super::closed_form::{intercept_ratio, scaled_moment_converged};
use super::oracle::{check_oracle_args, oracle_moment_relative, OracleSum};
use super::types::{CorrelationResult, DeformationMu, Method};
use crate::error::{Error, Result};

/// Below this value of `<φ(N)>^r` the intercept is replaced by its
/// large-momentum limit.
pub const UNDERFLOW_GUARD: f64 = 1e-280;

const UNDERFLOW_NOTE: &str = "mean occupation underflows; large-momentum limit returned";

/// Whether intercepts outside the Lerch domain `μ < 1/(r-1)` may be
/// computed by direct summation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fallback {
    #[default]
    Strict,
    Oracle,
}

/// The μ-bracket `[n]_μ = n/(1+μn)`.
pub fn mu_bracket(n: f64, mu: DeformationMu) -> f64 {
    n / (1.0 + mu.value() * n)
}

/// `[r]_μ! = [1]_μ [2]_μ ... [r]_μ`.
pub fn mu_factorial(r: u32, mu: DeformationMu) -> f64 {
    (1..=r).map(|j| mu_bracket(f64::from(j), mu)).product()
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha = beta*hbar*omega must be positive, got {alpha}")))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must be positive, got {tol}")))
    }
}

fn guard_error(mu: DeformationMu, r: u32) -> Error {
    let bound = DeformationMu::closed_form_bound(r);
    Error::domain(format!(
        "closed form of order {r} requires mu < 1/(r-1) = {bound}, got mu = {mu}; \
         the direct-summation fallback can evaluate it instead"
    ))
}

fn finish(value: Float, rel: f64, method: Method) -> CorrelationResult {
    let v = value.to_f64();
    CorrelationResult::new(v, v.abs() * (rel + f64::EPSILON), method)
}

/// Thermal average `<a†a> = <φ_μ(N)>`.
///
/// `1/(e^α - 1)` at μ = 0, otherwise
/// `μ^{-1} - μ^{-2}(1 - e^{-α}) Φ(e^{-α}, 1, 1/μ)`.
pub fn mean_occupation(mu: DeformationMu, alpha: f64, tol: f64) -> Result<CorrelationResult> {
    r_moment(mu, alpha, 1, tol)
}

/// `<(a†)^r a^r>`, normalized by the partition function.
///
/// `r!/(e^α - 1)^r` at μ = 0, otherwise
/// `μ^{-r} [1 + μ^{-1}(1 - e^{-α}) Σ_l A_l^{(r)} Φ(e^{-α}, 1, 1/μ - l)]`.
pub fn r_moment(mu: DeformationMu, alpha: f64, r: u32, tol: f64) -> Result<CorrelationResult> {
    check_alpha(alpha)?;
    check_tol(tol)?;
    if r < 1 {
        return Err(Error::domain("moment order r must be at least 1"));
    }
    if mu.is_undeformed() {
        let v = factorial(r) / alpha.exp_m1().powi(r as i32);
        return Ok(CorrelationResult::exact(v, Method::ClosedForm));
    }
    if !mu.admits_closed_form(r) {
        return Err(guard_error(mu, r));
    }
    let (x, rel) = scaled_moment_converged(mu.value(), alpha, r)?;
    let scale = Float::with_val(x.prec(), mu.value()).recip();
    use rug::ops::Pow;
    Ok(finish(x * scale.pow(r), rel, Method::ClosedForm))
}

/// The r-th order intercept `λ^{(r)} = <(a†)^r a^r> / <a†a>^r - 1`.
pub fn intercept(mu: DeformationMu, alpha: f64, r: u32, tol: f64) -> Result<CorrelationResult> {
    intercept_with(mu, alpha, r, tol, Fallback::Strict)
}

pub fn intercept_with(
    mu: DeformationMu,
    alpha: f64,
    r: u32,
    tol: f64,
    fallback: Fallback,
) -> Result<CorrelationResult> {
    check_alpha(alpha)?;
    check_tol(tol)?;
    if r < 2 {
        return Err(Error::domain(format!("intercepts are defined for r >= 2, got r = {r}")));
    }
    if mu.is_undeformed() {
        return Ok(CorrelationResult::exact(factorial(r) - 1.0, Method::ClosedForm));
    }
    let closed = mu.admits_closed_form(r);
    if !closed && fallback == Fallback::Strict {
        return Err(guard_error(mu, r));
    }
    if occupation_underflows(mu, alpha, r, tol)? {
        let v = intercept_asymptotic(mu, r);
        return Ok(CorrelationResult::exact(v, Method::Asymptotic).with_note(UNDERFLOW_NOTE));
    }
    if closed {
        let (ratio, rel) = intercept_ratio(mu.value(), alpha, r)?;
        let lambda = ratio.to_f64() - 1.0;
        let bound = (lambda + 1.0).abs() * rel + f64::EPSILON * lambda.abs().max(1.0);
        Ok(CorrelationResult::new(lambda, bound, Method::ClosedForm))
    } else {
        intercept_oracle(mu, alpha, r)
    }
}

fn occupation_underflows(mu: DeformationMu, alpha: f64, r: u32, tol: f64) -> Result<bool> {
    // <φ(N)> <= 1/(e^α - 1); only evaluate it when the Bose value is close.
    let bose = 1.0 / alpha.exp_m1();
    if bose.powi(r as i32) >= UNDERFLOW_GUARD * 1e10 {
        return Ok(false);
    }
    let n = mean_occupation(mu, alpha, tol)?.value;
    Ok(n == 0.0 || n.powi(r as i32) < UNDERFLOW_GUARD)
}

/// Intercept assembled from direct summations of numerator and denominator.
pub fn intercept_oracle(mu: DeformationMu, alpha: f64, r: u32) -> Result<CorrelationResult> {
    check_oracle_args(mu, alpha, r)?;
    if r < 2 {
        return Err(Error::domain(format!("intercepts are defined for r >= 2, got r = {r}")));
    }
    let num = oracle_moment_relative(mu.value(), alpha, r)?;
    let den = oracle_moment_relative(mu.value(), alpha, 1)?;
    if den.value == 0.0 || den.value.powi(r as i32) < UNDERFLOW_GUARD {
        let v = intercept_asymptotic(mu, r);
        return Ok(CorrelationResult::exact(v, Method::Asymptotic).with_note(UNDERFLOW_NOTE));
    }
    let ratio = num.value / den.value.powi(r as i32);
    let rel = rel_err(&num) + f64::from(r) * rel_err(&den) + 4.0 * f64::EPSILON;
    Ok(CorrelationResult::new(ratio - 1.0, ratio * rel, Method::Oracle))
}

fn rel_err(s: &OracleSum) -> f64 {
    s.error_bound / s.value
}

/// Large-momentum limit `(1+μ)^r [r]_μ! - 1`.
pub fn intercept_asymptotic(mu: DeformationMu, r: u32) -> f64 {
    let m = mu.value();
    (1..=r)
        .map(|j| {
            let j = f64::from(j);
            j * (1.0 + m) / (1.0 + m * j)
        })
        .product::<f64>()
        - 1.0
}

/// `r^{(3)} = (λ^{(3)} - 3λ^{(2)}) / (2 (λ^{(2)})^{3/2})`.
pub fn r3_from_intercepts(lambda2: f64, lambda3: f64) -> Result<f64> {
    if !(lambda2 > 0.0) {
        return Err(Error::domain(format!("r3 needs lambda2 > 0, got {lambda2}")));
    }
    Ok((lambda3 - 3.0 * lambda2) / (2.0 * lambda2.powf(1.5)))
}

/// Large-momentum limit of `r^{(3)}`.
pub fn r3_asymptotic(mu: DeformationMu) -> f64 {
    let l2 = intercept_asymptotic(mu, 2);
    let l3 = intercept_asymptotic(mu, 3);
    (l3 - 3.0 * l2) / (2.0 * l2.powf(1.5))
}

pub fn r3_function(mu: DeformationMu, alpha: f64, tol: f64) -> Result<CorrelationResult> {
    r3_function_with(mu, alpha, tol, Fallback::Strict)
}

pub fn r3_function_with(mu: DeformationMu, alpha: f64, tol: f64, fallback: Fallback) -> Result<CorrelationResult> {
    let l2 = intercept_with(mu, alpha, 2, tol, fallback)?;
    let l3 = intercept_with(mu, alpha, 3, tol, fallback)?;
    combine_r3(&l2, &l3)
}

/// `r^{(3)}` from oracle intercepts.
pub fn r3_oracle(mu: DeformationMu, alpha: f64) -> Result<CorrelationResult> {
    let l2 = intercept_oracle(mu, alpha, 2)?;
    let l3 = intercept_oracle(mu, alpha, 3)?;
    combine_r3(&l2, &l3)
}

fn combine_r3(l2: &CorrelationResult, l3: &CorrelationResult) -> Result<CorrelationResult> {
    let value = r3_from_intercepts(l2.value, l3.value)?;
    let (a, b) = (l2.value, l3.value);
    let d_b = 1.0 / (2.0 * a.powf(1.5));
    let d_a = -3.0 / (2.0 * a.powf(1.5)) - 0.75 * (b - 3.0 * a) / a.powf(2.5);
    let bound = d_a.abs() * l2.error_bound + d_b.abs() * l3.error_bound + f64::EPSILON * value.abs();
    let mut out = CorrelationResult::new(value, bound, l2.method.combine(l3.method));
    out.note = l2.note.or(l3.note);
    Ok(out)
}
