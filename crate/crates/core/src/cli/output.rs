//! Machine-readable output. Numbers are decimal strings so that arbitrary
//! precision survives every JSON reader.

use serde::Serialize;

use crate::algebra::{HSeries, Poly, Rational, XSeries};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exact {
    pub numerator: String,
    pub denominator: String,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }
}

/// One term: dense exponent vector over the declared variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

pub fn terms(p: &Poly) -> Vec<Term> {
    let n = p.context().len();
    p.terms()
        .map(|(m, c)| Term {
            exponents: m.to_dense(n),
            numerator: c.numer().to_string(),
            denominator: c.denom().to_string(),
        })
        .collect()
}

/// `ℏ`-graded coefficients: entry `k` holds the coefficient of `ℏ^k`.
pub fn graded(s: &HSeries) -> Vec<Vec<Term>> {
    s.coeffs().iter().map(terms).collect()
}

pub fn series_terms(s: &XSeries) -> Vec<Term> {
    terms(&s.to_poly())
}

#[derive(Debug, Serialize)]
pub struct StarOutput {
    pub products: Vec<StarProduct>,
}

#[derive(Debug, Serialize)]
pub struct StarProduct {
    pub variables: Vec<String>,
    pub order: usize,
    pub left: String,
    pub right: String,
    pub coefficients: Vec<Vec<Term>>,
    pub display: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct WkbOutput {
    pub curve: String,
    pub j: Vec<Exact>,
    pub degree: usize,
    /// `u_g` for `g = 0..=orders`.
    pub u: Vec<Vec<Term>>,
    /// `S_g` with `S_g′ = u_g`.
    pub s: Vec<Vec<Term>>,
    pub residual_vanishes: bool,
}

#[derive(Debug, Serialize)]
pub struct LambdaOutput {
    pub curve: String,
    pub airy_constant: Exact,
    pub lambda: Vec<Exact>,
    pub recurrence_holds: bool,
    pub residual_vanishes: bool,
    pub residual: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Param {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct ReduceOutput {
    pub params: Vec<Param>,
    pub chart: String,
    pub zeta: Vec<String>,
    pub xi: Vec<String>,
    pub psi_g: Option<String>,
    pub psi_l: Option<String>,
    pub gaussian_route: Option<String>,
    pub elimination_route: Option<String>,
    /// `c₁` in `exp(c₁ z₁²/2ℏ)`.
    pub coefficient: Option<String>,
    pub coefficient_exact: Option<Exact>,
    pub det_kernel: Option<String>,
    /// `AGREE`, `DISAGREE` or `NONTRANSVERSAL`.
    pub verdict: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckOutput {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Payload {
    Star(StarOutput),
    Wkb(WkbOutput),
    Lambda(LambdaOutput),
    Reduce(ReduceOutput),
    Check(CheckOutput),
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    /// `pass` or `fail`.
    pub status: &'static str,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Serialize)]
pub struct ErrorOutput {
    pub schema_version: &'static str,
    pub status: &'static str,
    pub error: String,
    pub offset: Option<usize>,
}
