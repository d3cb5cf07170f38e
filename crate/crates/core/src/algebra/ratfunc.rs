use std::fmt;
use std::sync::Arc;

use super::coeff::{Coeff, Rational};
use super::gcd::gcd;
use super::poly::{same_context, Context, Poly};
use crate::error::{Error, Result};

/// Rational function in a fixed set of parameters, kept in lowest terms
/// with a monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // lowest terms with monic denominators are canonical; a parameterless
        // constant compares by value whatever its context
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.num == other.num && self.den == other.den,
            _ => false,
        }
    }
}

/// Parameter-free rational functions (constants) carry no context; mixing
/// them with a parametrised value adopts that value's context.
fn empty_context() -> Arc<Context> {
    use std::sync::OnceLock;
    static EMPTY: OnceLock<Arc<Context>> = OnceLock::new();
    EMPTY
        .get_or_init(|| Context::new(Vec::<String>::new()))
        .clone()
}

impl RatFunc {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self> {
        num.check_context(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        let den = Poly::one(p.context());
        RatFunc { num: p, den }
    }

    pub fn constant(r: Rational) -> Self {
        let ctx = empty_context();
        RatFunc {
            num: Poly::constant(&ctx, r),
            den: Poly::one(&ctx),
        }
    }

    pub fn param(ctx: &Arc<Context>, name: &str) -> Result<Self> {
        Ok(Self::from_poly(Poly::var_named(ctx, name)?))
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn context(&self) -> &Arc<Context> {
        self.num.context()
    }

    fn reduce(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            let one = Poly::one(den.context());
            return RatFunc { num, den: one };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Bring two values into a common parameter context.
    fn aligned(
        &self,
        other: &Self,
    ) -> (
        Poly<Rational>,
        Poly<Rational>,
        Poly<Rational>,
        Poly<Rational>,
    ) {
        if same_context(self.context(), other.context()) {
            return (
                self.num.clone(),
                self.den.clone(),
                other.num.clone(),
                other.den.clone(),
            );
        }
        if self.context().is_empty() {
            let ctx = other.context();
            return (
                Poly::constant(ctx, self.num.constant_term()),
                Poly::constant(ctx, self.den.constant_term()),
                other.num.clone(),
                other.den.clone(),
            );
        }
        if other.context().is_empty() {
            let ctx = self.context();
            return (
                self.num.clone(),
                self.den.clone(),
                Poly::constant(ctx, other.num.constant_term()),
                Poly::constant(ctx, other.den.constant_term()),
            );
        }
        panic!(
            "rational functions over different parameter sets: [{}] vs [{}]",
            self.context(),
            other.context()
        );
    }

    /// Value at a point of the parameter space; `None` on a pole.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        if self.context().is_empty() {
            return self.as_rational();
        }
        let d = self.den.eval(point).ok()?;
        if Coeff::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(point).ok()? / d)
    }

    /// Substitute numbers for the parameters, giving a constant.
    pub fn specialize(&self, point: &[Rational]) -> Result<RatFunc> {
        self.eval(point)
            .map(RatFunc::constant)
            .ok_or(Error::DivisionByZero)
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::constant(Rational::zero())
    }
    fn one() -> Self {
        RatFunc::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| Coeff::is_one(&r))
    }
    fn add(&self, other: &Self) -> Self {
        let (an, ad, bn, bd) = self.aligned(other);
        if ad == bd {
            return RatFunc::reduce(&an + &bn, ad);
        }
        RatFunc::reduce(&(&an * &bd) + &(&bn * &ad), &ad * &bd)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let (an, ad, bn, bd) = self.aligned(other);
        RatFunc::reduce(&an * &bn, &ad * &bd)
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::reduce(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant())
            .then(|| self.num.constant_term() / self.den.constant_term())
    }
    fn is_compound(&self) -> bool {
        let monomial = self.den.is_constant()
            && self.den.constant_term() == Rational::one()
            && self.num.num_terms() == 1
            && self
                .num
                .leading()
                .is_some_and(|(_, c)| !Coeff::is_negative(c));
        self.as_rational().is_none() && !monomial
    }
    fn is_negative(&self) -> bool {
        self.as_rational().is_some_and(|r| Coeff::is_negative(&r))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let single_var = self.den.num_terms() == 1
            && self
                .den
                .leading()
                .is_some_and(|(m, c)| m.degree() == 1 && Coeff::is_one(c));
        if self.den.is_constant() && self.den.constant_term() == Rational::one() {
            write!(f, "{}", self.num)
        } else if single_var || self.den.is_constant() {
            write!(f, "{num}/{}", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}
