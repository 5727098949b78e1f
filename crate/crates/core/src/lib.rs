//! Arbitrary-precision evaluation of the golden-ratio totient and Möbius
//! logarithmic series
//!
//! ```text
//! ϕ   = −Σ_{k≥1} (φ(k)/k) · log(1 − ϕ^(−k))
//! 1/ϕ = −Σ_{k≥1} (μ(k)/k) · log(1 − ϕ^(−k))
//! ```
//!
//! their general-`x` forms `x/(1−x)` and `x`, and the exponential products
//! derived from them.
//!
//! The crate is `no_std` and needs only `alloc`. Modules:
//!
//! - [`fixed`]: decimal fixed-point values and [`PrecisionContext`]
//! - [`elementary`]: sqrt, `−log(1−y)`, exp, integer powers, named constants
//! - [`arith`]: linear sieve for `φ` and `μ`, brute-force oracles, divisor sums
//! - [`series`]: truncated series and product evaluation with error bounds
//! - [`coeffs`]: exact rational expansion of the double sum behind the series
//! - [`identities`]: closed-form checks with matched-digit reports
#![no_std]

extern crate alloc;

pub mod arith;
pub mod coeffs;
pub mod elementary;
pub mod error;
pub mod fixed;
pub mod identities;
pub mod series;

pub use arith::{brute_moebius, brute_totient, ArithFnTable, Weight};
pub use coeffs::{
    compare_series, expand_double_sum, expected_coefficients, RationalNumber,
    TruncatedRationalSeries,
};
pub use elementary::Constant;
pub use error::{Error, Result};
pub use fixed::{matched_digits, FixedPointValue, PrecisionContext};
pub use identities::{IdentityId, RationalPoint, VerificationReport};
pub use series::{
    eval_product_form, eval_weighted_log_series, truncation_index, EvalResult, Point, SeriesSpec,
};
