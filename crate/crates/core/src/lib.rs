//! Exact deformation quantisation of polynomial Poisson algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: big rationals, sparse multivariate polynomials, rational
//!   functions in parameters, small dense matrices and truncated series.
//! * [`poisson`]: constant bi-vectors, bi-maps on tensors, brackets and
//!   coisotropy checks for linear ideals.
//! * [`star`]: the exponential (Moyal) star product, its gauge transforms,
//!   the braided bi-map and an independent Wick-contraction evaluation.
//! * [`weyl`]: normal-ordered Weyl algebra and the symmetric-ordering map
//!   from the star algebra into it.
//! * [`wkb`]: WKB exponents of plane curves and the λ(H) series solving the
//!   star equation directly.
//! * [`reduction`]: linear symplectic reduction of Gaussian wavefunctions
//!   by formal Gaussian integration and by elimination.
//! * [`cli`]: expression parser and the command-line front end.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod poisson;
pub mod reduction;
pub mod star;
pub mod weyl;
pub mod wkb;

pub use algebra::{Coeff, Context, HSeries, Matrix, Monomial, Poly, RatFunc, Rational, XSeries};
pub use error::{Error, Result};
