//! Special functions: the Lerch transcendent at `s = 1` and the exact
//! integer combinatorics behind the Taylor coefficients.

pub mod combinatorics;
pub mod lerch;

pub use combinatorics::{g_coeff, g_coeff_big, stirling2, stirling2_big, StirlingTable};
pub use lerch::{lerch_phi_s1, lerch_phi_s1_with_limit, LerchQuery, LerchSum};
