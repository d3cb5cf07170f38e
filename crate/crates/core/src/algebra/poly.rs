use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use super::coeff::{Coeff, Rational};
use crate::error::{Error, Result};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    names: Vec<String>,
}

impl Context {
    pub fn new<I, S>(names: I) -> Arc<Context>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Arc::new(Context {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.names.len() {
            Ok(())
        } else {
            Err(Error::VariableIndex {
                index,
                len: self.names.len(),
            })
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

/// Sparse exponent vector: `(variable index, exponent)` pairs sorted by
/// index, zero exponents never stored.
///
/// Ordered graded-lexicographically: total degree first, then the first
/// variable whose exponent differs decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Build from a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
        )
    }

    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
        for (i, e) in pairs {
            match merged.last_mut() {
                Some((j, f)) if *j == i => *f += e,
                _ => merged.push((i, e)),
            }
        }
        Monomial(merged)
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.0
    }

    /// Dense exponent vector of length `n`.
    pub fn to_dense(&self, n: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        for &(i, e) in &self.0 {
            v[i] = e;
        }
        v
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(j, f) in &other.0 {
            let slot = out.iter_mut().find(|(i, _)| *i == j)?;
            if slot.1 < f {
                return None;
            }
            slot.1 -= f;
        }
        out.retain(|&(_, e)| e > 0);
        Some(Monomial(out))
    }

    /// Lower the exponent of `index` by one, returning the old exponent.
    pub fn lower(&self, index: usize) -> Option<(u32, Monomial)> {
        let e = self.exponent(index);
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        let pos = out.iter().position(|&(i, _)| i == index).unwrap();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    /// Drop the variable `index`, returning its exponent and the rest.
    pub fn split_off(&self, index: usize) -> (u32, Monomial) {
        let e = self.exponent(index);
        let rest = self
            .0
            .iter()
            .copied()
            .filter(|&(i, _)| i != index)
            .collect();
        (e, Monomial(rest))
    }

    /// Re-index variables through `map` (old index -> new index).
    pub fn reindex(&self, map: &[usize]) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(i, e)| (map[i], e)).collect())
    }

    fn write(&self, ctx: &Context, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", ctx.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter(), other.0.iter());
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    // the side that still has a variable left has a larger
                    // exponent in it
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(i, e)), Some(&(j, f))) => {
                        if i != j {
                            // lower index present on one side only
                            return j.cmp(&i);
                        }
                        if e != f {
                            return e.cmp(&f);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a coefficient field.
///
/// Zero coefficients are never stored, so two polynomials in the same
/// context are equal iff their term maps are equal.
#[derive(Clone, Debug)]
pub struct Poly<C: Coeff = Rational> {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

pub(crate) fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Coeff> Poly<C> {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: C) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(ctx: &Arc<Context>, n: i64) -> Self {
        Self::constant(ctx, C::from_int(n))
    }

    /// The variable with the given index.
    pub fn var(ctx: &Arc<Context>, index: usize) -> Result<Self> {
        ctx.check_index(index)?;
        Ok(Self::monomial(ctx, Monomial::var(index), C::one()))
    }

    pub fn var_named(ctx: &Arc<Context>, name: &str) -> Result<Self> {
        Self::var(ctx, ctx.index_of(name)?)
    }

    pub fn monomial(ctx: &Arc<Context>, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collect terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ctx: &Arc<Context>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(index))
            .max()
            .unwrap_or(0)
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn check_context(&self, other: &Self) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), &c.mul(d));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.mul(c)))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in the variable `index`.
    pub fn diff(&self, index: usize) -> Result<Self> {
        self.ctx.check_index(index)?;
        Ok(self.diff_unchecked(index))
    }

    pub(crate) fn diff_unchecked(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(index) {
                out.add_term(lowered, &c.mul(&C::from_int(i64::from(e))));
            }
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop all terms of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `images[i]` for variable `i`. All images share a target
    /// context, which becomes the context of the result.
    pub fn compose(&self, images: &[Poly<C>]) -> Result<Self> {
        if images.len() != self.ctx.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.len(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ctx.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if !same_context(&img.ctx, &target) {
                return Err(Error::ContextMismatch {
                    left: target.to_string(),
                    right: img.ctx.to_string(),
                });
            }
        }
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for &(i, e) in m.exponents() {
                t = &t * &images[i].pow(e);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitute the polynomial `value` (same context) for one variable.
    pub fn substitute(&self, index: usize, value: &Poly<C>) -> Result<Self> {
        self.ctx.check_index(index)?;
        self.check_context(value)?;
        let images: Vec<_> = (0..self.ctx.len())
            .map(|i| {
                if i == index {
                    value.clone()
                } else {
                    Poly::var(&self.ctx, i).expect("index in range")
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.ctx.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.len(),
                found: point.len(),
            });
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in m.exponents() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Move into another context, sending variable `i` to `map[i]`.
    pub fn reindex(&self, target: &Arc<Context>, map: &[usize]) -> Result<Self> {
        if map.len() != self.ctx.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.len(),
                found: map.len(),
            });
        }
        for &j in map {
            target.check_index(j)?;
        }
        Ok(Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.reindex(map), c.clone())),
        ))
    }

    /// Move into a context that contains every variable of this one, matched
    /// by name.
    pub fn embed(&self, target: &Arc<Context>) -> Result<Self> {
        let map = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Result<Vec<_>>>()?;
        self.reindex(target, &map)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Coefficients of each variable in a polynomial of degree at most one,
    /// followed by the constant term.
    pub fn linear_coefficients(&self) -> Result<(Vec<C>, C)> {
        if self.degree().unwrap_or(0) > 1 {
            return Err(Error::DegreeTooHigh {
                found: self.degree().unwrap_or(0) as usize,
                max: 1,
            });
        }
        let coeffs = (0..self.ctx.len())
            .map(|i| self.coeff(&Monomial::var(i)))
            .collect();
        Ok((coeffs, self.constant_term()))
    }

    /// View as a univariate polynomial in `index`: coefficient of each power.
    pub(crate) fn coefficients_in(&self, index: usize) -> BTreeMap<u32, Poly<C>> {
        let mut out: BTreeMap<u32, Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(index);
            out.entry(e)
                .or_insert_with(|| Poly::zero(&self.ctx))
                .add_term(rest, c);
        }
        out
    }
}

impl Poly<Rational> {
    /// Multivariate division by leading terms; `Some(q)` iff `self = q * d`.
    pub(crate) fn div_exact(&self, d: &Poly<Rational>) -> Option<Poly<Rational>> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ctx);
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Poly::monomial(&self.ctx, qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn from_integer(ctx: &Arc<Context>, n: BigInt) -> Self {
        Self::constant(ctx, Rational::from_integer(n))
    }

    /// Make the graded-lex leading coefficient one.
    pub(crate) fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Descending graded-lex order, e.g. `x^2 + 2*x*y - y - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = !c.is_compound() && c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                if mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.is_compound() {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            m.write(&self.ctx, f)?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a, C: Coeff> $tr<&'a Poly<C>> for &'a Poly<C> {
            type Output = Poly<C>;
            /// Panics on a context mismatch; use the `try_` form to recover.
            fn $method(self, rhs: &'a Poly<C>) -> Poly<C> {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$try(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xy() -> (Arc<Context>, Poly, Poly) {
        let ctx = Context::new(["x", "y"]);
        let x = Poly::var(&ctx, 0).unwrap();
        let y = Poly::var(&ctx, 1).unwrap();
        (ctx, x, y)
    }

    fn conic() -> Poly {
        let (ctx, x, y) = xy();
        -&y + x.pow(2) + (&Poly::from_int(&ctx, 2) * &(&x * &y)) + y.pow(2)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn multiplying_by_one() {
        let (ctx, x, _) = xy();
        assert_eq!(&x * &Poly::one(&ctx), x);
        let h = conic();
        assert_eq!(&h * &Poly::one(&ctx), h);
        assert_eq!(h.to_string(), "x^2 + 2*x*y + y^2 - y");
    }

    #[test]
    fn derivatives() {
        let (ctx, x, y) = xy();
        let f = &x.pow(2) + &(&Poly::from_int(&ctx, 2) * &(&x * &y));
        assert_eq!(
            f.diff(0).unwrap(),
            &(&Poly::from_int(&ctx, 2) * &x) + &(&Poly::from_int(&ctx, 2) * &y)
        );
        let hy = conic().diff(1).unwrap();
        assert_eq!(hy.to_string(), "2*x + 2*y - 1");
        assert!(Poly::<Rational>::from_int(&ctx, 7)
            .diff(0)
            .unwrap()
            .is_zero());
        assert!(matches!(conic().diff(2), Err(Error::VariableIndex { .. })));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let (_, x, _) = xy();
        let other = Context::new(["u"]);
        let u = Poly::<Rational>::var(&other, 0).unwrap();
        assert!(matches!(x.try_mul(&u), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert!(x > y);
        assert!(y.mul(&y) > x);
        assert!(x.mul(&x) > x.mul(&y));
        assert!(x.mul(&y) > y.mul(&y));
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let a = &(&x + &y) * &(&x - &y);
        assert_eq!(a.div_exact(&(&x + &y)), Some(&x - &y));
        assert_eq!(x.div_exact(&(&x + &y)), None);
    }

    #[test]
    fn evaluation_and_substitution() {
        let h = conic();
        assert_eq!(h.eval(&[rat(1, 1), rat(1, 2)]).unwrap(), rat(7, 4));
        let (ctx, x, _) = xy();
        let on_line = h.substitute(1, &x).unwrap();
        assert_eq!(on_line, &Poly::from_int(&ctx, 4) * &x.pow(2) - x.clone());
    }
}
