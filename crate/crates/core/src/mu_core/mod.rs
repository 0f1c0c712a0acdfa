//! Observables of the μ-deformed Bose gas: the one-particle distribution,
//! r-th order moments, correlation intercepts and their large-momentum
//! limits. Every closed form has a brute-force counterpart in [`oracle`].

mod closed_form;
mod observables;
pub mod oracle;
mod types;

pub use observables::{
    intercept, intercept_asymptotic, intercept_oracle, intercept_with, mean_occupation, mu_bracket, mu_factorial,
    r3_asymptotic, r3_from_intercepts, r3_function, r3_function_with, r3_oracle, r_moment, Fallback, UNDERFLOW_GUARD,
};
pub use oracle::oracle_moment;
pub use types::{CorrelationResult, DeformationMu, Method, ThermoPoint, PION_MASS_MEV};
