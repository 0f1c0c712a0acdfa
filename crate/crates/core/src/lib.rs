//! Exact momentum-correlation intercepts of the μ-deformed Bose gas.
//!
//! The one-particle distribution, the r-th order moments and the intercepts
//! `λ^{(r)}` are evaluated through the Lerch transcendent `Φ(z, 1, a)`, each
//! with an independent brute-force check. Supporting modules provide the
//! simple-fraction weights, Taylor coefficients in μ with divergence
//! diagnostics, and the p,q-deformed gas used for comparison.

// Negated float comparisons are deliberate: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod mu_core;
pub mod output;
pub mod partial_fraction;
pub mod pq_compare;
pub mod series_expansion;
pub mod special_fn;

pub mod cli;

pub use error::{Error, Result};
pub use mu_core::{CorrelationResult, DeformationMu, Method, ThermoPoint};
