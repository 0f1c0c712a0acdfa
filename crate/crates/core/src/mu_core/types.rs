use std::fmt;

use crate::error::{Error, Result};

/// Charged pion mass in MeV, the default particle mass.
pub const PION_MASS_MEV: f64 = 139.57;

/// The deformation parameter μ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DeformationMu(f64);

impl DeformationMu {
    pub const UNDEFORMED: DeformationMu = DeformationMu(0.0);

    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu >= 0.0 {
            Ok(Self(mu))
        } else {
            Err(Error::domain(format!("deformation parameter mu = {mu} must be finite and >= 0")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_undeformed(self) -> bool {
        self.0 == 0.0
    }

    /// Upper bound `1/(r-1)` on μ for the Lerch representation of order `r`
    /// (infinite for `r <= 1`).
    pub fn closed_form_bound(r: u32) -> f64 {
        if r <= 1 {
            f64::INFINITY
        } else {
            1.0 / f64::from(r - 1)
        }
    }

    /// Whether every Lerch argument `1/μ - l`, `l < r`, is positive.
    pub fn admits_closed_form(self, r: u32) -> bool {
        self.0 < Self::closed_form_bound(r)
    }

    /// The integer `k = 1/μ` when `1 <= k <= r-1`: the defining series of
    /// order `r` then has a vanishing denominator.
    pub fn series_pole(self, r: u32) -> Option<u32> {
        if self.0 <= 0.0 || r < 2 {
            return None;
        }
        let k = 1.0 / self.0;
        let nearest = k.round();
        let hit = (k - nearest).abs() <= 1e-12 * k && nearest >= 1.0 && nearest <= f64::from(r - 1);
        hit.then_some(nearest as u32)
    }
}

impl fmt::Display for DeformationMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A (temperature, momentum, mass) triple in MeV with ħ = c = k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    temperature: f64,
    momentum: f64,
    mass: f64,
}

impl ThermoPoint {
    pub fn new(temperature: f64, momentum: f64, mass: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::domain(format!("temperature must be positive, got {temperature}")));
        }
        if !(momentum.is_finite() && momentum >= 0.0) {
            return Err(Error::domain(format!("momentum must be >= 0, got {momentum}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { temperature, momentum, mass })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `ħω = sqrt(m² + k²)`.
    pub fn energy(&self) -> f64 {
        self.mass.hypot(self.momentum)
    }

    /// `α = βħω`.
    pub fn alpha(&self) -> f64 {
        self.energy() / self.temperature
    }
}

/// How a [`CorrelationResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    ClosedForm,
    Oracle,
    Asymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Oracle => "oracle",
            Method::Asymptotic => "asymptotic",
        }
    }

    /// The less direct of two methods, for quantities assembled from both.
    pub(crate) fn combine(self, other: Method) -> Method {
        self.max(other)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value with an absolute error bound and its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationResult {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
    pub note: Option<&'static str>,
}

impl CorrelationResult {
    pub(crate) fn new(value: f64, error_bound: f64, method: Method) -> Self {
        Self { value, error_bound, method, note: None }
    }

    pub(crate) fn exact(value: f64, method: Method) -> Self {
        Self::new(value, f64::EPSILON * value.abs(), method)
    }

    pub(crate) fn with_note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_validation() {
        assert!(DeformationMu::new(-0.1).is_err());
        assert!(DeformationMu::new(f64::NAN).is_err());
        assert!(DeformationMu::new(0.0).unwrap().is_undeformed());
    }

    #[test]
    fn closed_form_guard() {
        let mu = DeformationMu::new(0.3).unwrap();
        assert!(mu.admits_closed_form(2));
        assert!(mu.admits_closed_form(4));
        assert!(!mu.admits_closed_form(5));
        assert!(DeformationMu::new(0.6).unwrap().admits_closed_form(2));
        assert!(!DeformationMu::new(0.6).unwrap().admits_closed_form(3));
    }

    #[test]
    fn poles() {
        assert_eq!(DeformationMu::new(0.5).unwrap().series_pole(3), Some(2));
        assert_eq!(DeformationMu::new(0.5).unwrap().series_pole(2), None);
        assert_eq!(DeformationMu::new(0.6).unwrap().series_pole(3), None);
        assert_eq!(DeformationMu::new(1.0).unwrap().series_pole(2), Some(1));
    }

    #[test]
    fn alpha_from_point() {
        let p = ThermoPoint::new(120.0, 0.0, PION_MASS_MEV).unwrap();
        assert!((p.alpha() - 139.57 / 120.0).abs() < 1e-15);
        let p = ThermoPoint::new(100.0, 300.0, 400.0).unwrap();
        assert!((p.alpha() - 5.0).abs() < 1e-15);
        assert!(ThermoPoint::new(0.0, 1.0, 1.0).is_err());
        assert!(ThermoPoint::new(1.0, -1.0, 1.0).is_err());
    }
}
