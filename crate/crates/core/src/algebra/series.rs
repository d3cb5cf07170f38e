//! Truncated series: in ℏ with polynomial coefficients ([`HSeries`]), and
//! in the base variables graded by total degree ([`XSeries`]).

use std::fmt;
use std::sync::Arc;

use super::coeff::{rational_sqrt, Coeff, Rational};
use super::poly::{Context, Poly};
use crate::error::{Error, Result};

/// Default ℏ truncation order.
pub const DEFAULT_ORDER: usize = 6;
/// Default total-degree cap for series in the base variables.
pub const DEFAULT_DEGREE: usize = 12;

/// `Σ_{k=0}^{N} ℏ^k p_k`, all `ℏ^{>N}` terms discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct HSeries {
    coeffs: Vec<Poly>,
    order: usize,
}

impl HSeries {
    pub fn zero(ctx: &Arc<Context>, order: usize) -> Self {
        HSeries {
            coeffs: vec![Poly::zero(ctx); order + 1],
            order,
        }
    }

    pub fn from_poly(p: Poly, order: usize) -> Self {
        let mut s = Self::zero(p.context(), order);
        s.coeffs[0] = p;
        s
    }

    /// Coefficients by ℏ-power; missing orders are zero, extra ones dropped.
    pub fn from_coeffs(ctx: &Arc<Context>, coeffs: Vec<Poly>, order: usize) -> Result<Self> {
        let mut s = Self::zero(ctx, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[0].check_context(&c)?;
            s.coeffs[k] = c;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn context(&self) -> &Arc<Context> {
        self.coeffs[0].context()
    }

    /// Coefficient of `ℏ^k` (zero beyond the order).
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.context()))
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        HSeries {
            coeffs: self.coeffs[..=order].to_vec(),
            order,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].try_add(&other.coeffs[k]))
            .collect::<Result<_>>()?;
        Ok(HSeries { coeffs, order })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.context(), order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out.coeffs[i + j] =
                    &out.coeffs[i + j] + &self.coeffs[i].try_mul(&other.coeffs[j])?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        HSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
            order: self.order,
        }
    }

    /// Multiply by `ℏ^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.context(), self.order);
        for i in 0..=self.order {
            if i + k <= self.order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Divide by `ℏ`; the `ℏ^0` coefficient must vanish. The order drops by
    /// one.
    pub fn div_hbar(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() || self.order == 0 {
            return None;
        }
        Some(HSeries {
            coeffs: self.coeffs[1..].to_vec(),
            order: self.order - 1,
        })
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        HSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            order: self.order,
        }
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*ħ")?,
                _ => write!(f, "({c})*ħ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(ħ^{})", self.order + 1)
    }
}

/// Power series in the base variables truncated at total degree `cap`;
/// entry `d` is homogeneous of degree `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct XSeries {
    coeffs: Vec<Poly>,
    cap: usize,
}

impl XSeries {
    pub fn zero(ctx: &Arc<Context>, cap: usize) -> Self {
        XSeries {
            coeffs: vec![Poly::zero(ctx); cap + 1],
            cap,
        }
    }

    pub fn from_poly(p: &Poly, cap: usize) -> Self {
        XSeries {
            coeffs: (0..=cap).map(|d| p.homogeneous(d as u32)).collect(),
            cap,
        }
    }

    pub fn constant(ctx: &Arc<Context>, r: Rational, cap: usize) -> Self {
        Self::from_poly(&Poly::constant(ctx, r), cap)
    }

    /// Univariate series from its coefficient list `[c_0, c_1, ...]`.
    pub fn from_univariate(ctx: &Arc<Context>, coeffs: &[Rational], cap: usize) -> Result<Self> {
        if ctx.len() != 1 {
            return Err(Error::NotUnivariate(ctx.len()));
        }
        let x = Poly::var(ctx, 0)?;
        let mut s = Self::zero(ctx, cap);
        for (d, c) in coeffs.iter().enumerate().take(cap + 1) {
            s.coeffs[d] = x.pow(d as u32).scale(c);
        }
        Ok(s)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn context(&self) -> &Arc<Context> {
        self.coeffs[0].context()
    }

    /// Homogeneous component of degree `d` (zero beyond the cap).
    pub fn component(&self, d: usize) -> Poly {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.context()))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs[0].constant_term()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn to_poly(&self) -> Poly {
        self.coeffs
            .iter()
            .fold(Poly::zero(self.context()), |acc, c| &acc + c)
    }

    /// Coefficients `[c_0, ..., c_cap]` of a univariate series.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        if self.context().len() != 1 {
            return Err(Error::NotUnivariate(self.context().len()));
        }
        Ok(self.coeffs.iter().map(single_coefficient).collect())
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        XSeries {
            coeffs: self.coeffs[..=cap].to_vec(),
            cap,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let cap = self.cap.min(other.cap);
        let coeffs = (0..=cap)
            .map(|d| self.coeffs[d].try_add(&other.coeffs[d]))
            .collect::<Result<_>>()?;
        Ok(XSeries { coeffs, cap })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            cap: self.cap,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        XSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
            cap: self.cap,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.context(), cap);
        for i in 0..=cap {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=cap - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] =
                    &out.coeffs[i + j] + &self.coeffs[i].try_mul(&other.coeffs[j])?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::constant(self.context(), Rational::one(), self.cap);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse up to the cap.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.constant_term();
        let inv0 = a0.inv().ok_or(Error::ZeroConstantTerm)?;
        let ctx = self.context().clone();
        let mut b: Vec<Poly> = vec![Poly::constant(&ctx, inv0.clone())];
        for d in 1..=self.cap {
            let mut acc = Poly::zero(&ctx);
            for k in 1..=d {
                if !self.coeffs[k].is_zero() && !b[d - k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &b[d - k]);
                }
            }
            b.push(acc.scale(&-&inv0));
        }
        Ok(XSeries {
            coeffs: b,
            cap: self.cap,
        })
    }

    /// Square root with the positive rational root of the constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let b0 = rational_sqrt(&a0).ok_or_else(|| Error::NotASquare(a0.to_string()))?;
        let half_inv = (&b0 + &b0).recip();
        let ctx = self.context().clone();
        let mut b: Vec<Poly> = vec![Poly::constant(&ctx, b0)];
        for d in 1..=self.cap {
            let mut acc = self.coeffs[d].clone();
            for k in 1..d {
                acc = &acc - &(&b[k] * &b[d - k]);
            }
            b.push(acc.scale(&half_inv));
        }
        Ok(XSeries {
            coeffs: b,
            cap: self.cap,
        })
    }

    /// Term-wise derivative; the cap drops by one since the top component
    /// is no longer known.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        self.context().check_index(var)?;
        if self.cap == 0 {
            return Ok(Self::zero(self.context(), 0));
        }
        Ok(XSeries {
            coeffs: (1..=self.cap)
                .map(|d| self.coeffs[d].diff_unchecked(var))
                .collect(),
            cap: self.cap - 1,
        })
    }

    /// Formal antiderivative in a single-variable context, zero constant
    /// term; the result has cap `cap + 1`.
    pub fn integrate(&self, var: usize) -> Result<Self> {
        let ctx = self.context().clone();
        if ctx.len() != 1 {
            return Err(Error::NotUnivariate(ctx.len()));
        }
        ctx.check_index(var)?;
        let mut coeffs = vec![Poly::zero(&ctx)];
        for c in &self.coeffs {
            coeffs.push(Poly::from_terms(
                &ctx,
                c.terms().map(|(m, v)| {
                    let e = m.exponent(var) + 1;
                    (
                        super::Monomial::from_pairs(vec![(var, e)]),
                        v / Rational::from_integer(e.into()),
                    )
                }),
            ));
        }
        Ok(XSeries {
            coeffs,
            cap: self.cap + 1,
        })
    }
}

/// Coefficient of a homogeneous univariate polynomial `c x^d`.
fn single_coefficient(p: &Poly) -> Rational {
    p.terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero)
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        // ascending degree reads better for series
        let mut first = true;
        for d in 0..=self.cap {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.num_terms() > 1 {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        if p.is_zero() {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.cap + 1)
    }
}
