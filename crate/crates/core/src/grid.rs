//! Grid sweeps over momentum, temperature and μ.
//!
//! Points are independent, so they are evaluated with rayon when the
//! `parallel` feature is on and sequentially otherwise. Both paths collect
//! in input order, so output is identical either way.

use crate::error::{Error, Result};
use crate::mu_core::{
    intercept_asymptotic, intercept_oracle, intercept_with, mean_occupation, r3_asymptotic, r3_function_with,
    DeformationMu, Fallback, Method, ThermoPoint, PION_MASS_MEV,
};

/// Order-preserving map over independent grid points.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// [`map_parallel`] when built with the `parallel` feature, else
/// [`map_sequential`].
pub fn map_points<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// What a record holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Distribution,
    Lambda2,
    Lambda3,
    LambdaR,
    R3,
    Asymptote,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Distribution => "distribution",
            Quantity::Lambda2 => "lambda2",
            Quantity::Lambda3 => "lambda3",
            Quantity::LambdaR => "lambda_r",
            Quantity::R3 => "r3",
            Quantity::Asymptote => "asymptote",
        }
    }

    /// The intercept tag for order `r`.
    pub fn intercept(r: u32) -> Self {
        match r {
            2 => Quantity::Lambda2,
            3 => Quantity::Lambda3,
            _ => Quantity::LambdaR,
        }
    }
}

/// Provenance of a record value.
#[derive(Debug, Clone, PartialEq)]
pub enum RecordMethod {
    Computed(Method),
    /// Closed form minus oracle.
    Difference,
    Failed(Error),
}

impl RecordMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordMethod::Computed(m) => m.as_str(),
            RecordMethod::Difference => "difference",
            RecordMethod::Failed(_) => "failed",
        }
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub quantity: Quantity,
    /// Momentum in MeV; `+inf` on asymptote rows.
    pub k: f64,
    pub temperature: f64,
    pub mu: f64,
    pub r: u32,
    pub value: f64,
    pub error_bound: f64,
    pub method: RecordMethod,
}

impl OutputRecord {
    pub fn failed(&self) -> Option<&Error> {
        match &self.method {
            RecordMethod::Failed(e) => Some(e),
            _ => None,
        }
    }

    /// Whether the error bound exceeds `tol`.
    pub fn exceeds(&self, tol: f64) -> bool {
        matches!(self.method, RecordMethod::Computed(_)) && !(self.error_bound <= tol)
    }
}

/// Figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// One-particle distribution, including the Bose reference μ = 0.
    Fig1,
    /// `λ^{(2)}` with asymptotes.
    Fig2,
    /// `λ^{(3)}` with asymptotes.
    Fig3,
    /// `r^{(3)}` with asymptotes.
    Fig4,
}

impl Figure {
    pub fn default_mus(self) -> Vec<f64> {
        match self {
            Figure::Fig1 => vec![0.0, 0.1, 0.2],
            _ => vec![0.1, 0.2],
        }
    }
}

/// A momentum × temperature × μ sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub k_steps: usize,
    pub temperatures: Vec<f64>,
    pub mus: Vec<f64>,
    pub mass: f64,
    pub tol: f64,
    pub fallback: Fallback,
}

impl GridSpec {
    /// The default sweep of a figure preset: k in [0, 1000] MeV, 101 points,
    /// T = 120 and 180 MeV.
    pub fn for_figure(fig: Figure) -> Self {
        Self {
            k_min: 0.0,
            k_max: 1000.0,
            k_steps: 101,
            temperatures: vec![120.0, 180.0],
            mus: fig.default_mus(),
            mass: PION_MASS_MEV,
            tol: crate::special_fn::lerch::DEFAULT_TOL,
            fallback: Fallback::Strict,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_min >= 0.0 && self.k_min < self.k_max && self.k_max.is_finite()) {
            return Err(Error::domain(format!(
                "momentum range needs 0 <= k_min < k_max, got [{}, {}]",
                self.k_min, self.k_max
            )));
        }
        if self.k_steps < 2 {
            return Err(Error::domain(format!("k_steps must be at least 2, got {}", self.k_steps)));
        }
        if self.temperatures.is_empty() || self.mus.is_empty() {
            return Err(Error::domain("grid needs at least one temperature and one mu"));
        }
        for &t in &self.temperatures {
            ThermoPoint::new(t, 0.0, self.mass)?;
        }
        for &m in &self.mus {
            DeformationMu::new(m)?;
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn momenta(&self) -> Vec<f64> {
        let n = self.k_steps - 1;
        let step = (self.k_max - self.k_min) / n as f64;
        (0..=n).map(|i| if i == n { self.k_max } else { self.k_min + step * i as f64 }).collect()
    }

    fn sorted(values: &[f64]) -> Vec<f64> {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

/// What to compute at a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observable {
    Distribution,
    Intercept(u32),
    InterceptOracle(u32),
    R3,
}

impl Observable {
    fn quantity(self) -> Quantity {
        match self {
            Observable::Distribution => Quantity::Distribution,
            Observable::Intercept(r) | Observable::InterceptOracle(r) => Quantity::intercept(r),
            Observable::R3 => Quantity::R3,
        }
    }

    fn order(self) -> u32 {
        match self {
            Observable::Distribution => 1,
            Observable::Intercept(r) | Observable::InterceptOracle(r) => r,
            Observable::R3 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Point { obs: Observable, t: f64, mu: f64, k: f64 },
    Asymptote { obs: Observable, t: f64, mu: f64 },
}

/// Evaluates `obs` at one point.
pub fn evaluate_point(
    obs: Observable,
    mu: f64,
    t: f64,
    k: f64,
    mass: f64,
    tol: f64,
    fallback: Fallback,
) -> OutputRecord {
    let result = DeformationMu::new(mu).and_then(|m| {
        let alpha = ThermoPoint::new(t, k, mass)?.alpha();
        match obs {
            Observable::Distribution => mean_occupation(m, alpha, tol),
            Observable::Intercept(r) => intercept_with(m, alpha, r, tol, fallback),
            Observable::InterceptOracle(r) => intercept_oracle(m, alpha, r),
            Observable::R3 => r3_function_with(m, alpha, tol, fallback),
        }
    });
    let (value, error_bound, method) = match result {
        Ok(c) => (c.value, c.error_bound, RecordMethod::Computed(c.method)),
        Err(e) => (f64::NAN, f64::NAN, RecordMethod::Failed(e)),
    };
    OutputRecord { quantity: obs.quantity(), k, temperature: t, mu, r: obs.order(), value, error_bound, method }
}

fn evaluate_asymptote(obs: Observable, mu: f64, t: f64) -> OutputRecord {
    let (value, method) = match DeformationMu::new(mu) {
        Ok(m) => {
            let v = match obs {
                Observable::R3 => r3_asymptotic(m),
                other => intercept_asymptotic(m, other.order()),
            };
            (v, RecordMethod::Computed(Method::Asymptotic))
        }
        Err(e) => (f64::NAN, RecordMethod::Failed(e)),
    };
    OutputRecord {
        quantity: Quantity::Asymptote,
        k: f64::INFINITY,
        temperature: t,
        mu,
        r: obs.order(),
        value,
        error_bound: f64::EPSILON * value.abs(),
        method,
    }
}

fn run_tasks(tasks: &[Task], mass: f64, tol: f64, fallback: Fallback) -> Vec<OutputRecord> {
    map_points(tasks, |task| match *task {
        Task::Point { obs, t, mu, k } => evaluate_point(obs, mu, t, k, mass, tol, fallback),
        Task::Asymptote { obs, t, mu } => evaluate_asymptote(obs, mu, t),
    })
}

/// Records for `obs` over every (T, μ, k), ordered by T, then μ, then k.
/// With `asymptotes`, each (T, μ) block ends with its k = ∞ row.
pub fn sweep(obs: Observable, grid: &GridSpec, ks: &[f64], asymptotes: bool) -> Vec<OutputRecord> {
    let mut ks = ks.to_vec();
    ks.sort_by(f64::total_cmp);
    let mut tasks = Vec::new();
    for t in GridSpec::sorted(&grid.temperatures) {
        for mu in GridSpec::sorted(&grid.mus) {
            tasks.extend(ks.iter().map(|&k| Task::Point { obs, t, mu, k }));
            if asymptotes {
                tasks.push(Task::Asymptote { obs, t, mu });
            }
        }
    }
    run_tasks(&tasks, grid.mass, grid.tol, grid.fallback)
}

/// The records behind a figure preset.
pub fn figure_records(fig: Figure, grid: &GridSpec) -> Result<Vec<OutputRecord>> {
    grid.validate()?;
    let ks = grid.momenta();
    Ok(match fig {
        Figure::Fig1 => {
            let mut g = grid.clone();
            if !g.mus.contains(&0.0) {
                g.mus.push(0.0);
            }
            sweep(Observable::Distribution, &g, &ks, false)
        }
        Figure::Fig2 => sweep(Observable::Intercept(2), grid, &ks, true),
        Figure::Fig3 => sweep(Observable::Intercept(3), grid, &ks, true),
        Figure::Fig4 => sweep(Observable::R3, grid, &ks, true),
    })
}
