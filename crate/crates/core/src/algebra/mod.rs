//! Exact arithmetic foundation.
//!
//! Everything here is immutable after construction. Coefficients are exact
//! big rationals (or rational functions of external parameters), never
//! floating point.

mod coeff;
mod gcd;
mod matrix;
mod poly;
mod ratfunc;
mod series;

pub use coeff::{binomial, factorial, rat, Coeff, Rational};
pub use matrix::Matrix;
pub use poly::{Context, Monomial, Poly};
pub use ratfunc::RatFunc;
pub use series::{HSeries, XSeries, DEFAULT_DEGREE, DEFAULT_ORDER};
