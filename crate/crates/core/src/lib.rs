//! Pricing engine for continuously monitored arithmetic-average Asian options
//! under Black-Scholes dynamics, built on the Geman-Yor Laplace transform of
//! a family of auxiliary constant-strike option values.
//!
//! The closed-form transform is valid for any sign of the normalized drift
//! index ν (the classical probabilistic derivation needs ν ≥ 0; analytic
//! continuation extends it to ν < 0 on the half-plane `Re(z) > 4`), so the
//! engine covers every combination of rate, dividend yield and volatility.
//! Prices come out of a numerical Bromwich inversion along a vertical
//! contour; an independent Monte Carlo oracle cross-checks every analytic
//! ingredient.

// Frozen reference constants keep their full published digits, and the
// `!(x > 0)`-style guards deliberately reject NaN along with the out-of-range
// values.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod benchmark;
pub mod error;
pub mod inversion;
pub mod kernel;
pub mod mc;
pub mod pricer;
pub mod quadrature;
pub mod transform;

mod sum;

pub use error::{Error, Result};
pub use inversion::{bromwich_invert, normalized_price, InversionConfig, InversionResult, LaplaceTransform};
pub use kernel::{bessel_i, kummer_phi, log_gamma, mu_param, principal_sqrt, KernelConfig};
pub use mc::{laplace_of_samples, mc_accumulation_moment, mc_l, mc_price_asian, McConfig, McEstimate};
pub use pricer::{normalize, price_asian, MarketInputs, NormalizedProblem, PriceResult, PricingPath};
pub use quadrature::QuadratureConfig;
pub use transform::{
    first_moment, second_moment, weber_d_closed, weber_d_quadrature, TransformEvaluator,
};

/// Re-export of the complex number type used across the public API.
pub use num_complex::Complex64;
