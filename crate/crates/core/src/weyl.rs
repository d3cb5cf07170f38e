//! Weyl algebra in normal order, generated by `x_i` and `ŷ_i = ℏ∂_i` with
//! `ŷ_i x_j = x_j ŷ_i + ℏ δ_ij`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    binomial, factorial, Coeff, Context, HSeries, Monomial, Poly, Rational, XSeries,
};
use crate::error::{Error, Result};

/// `ℏ^hbar · x^x · ŷ^d` with all `x` factors to the left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylWord {
    pub x: Monomial,
    pub d: Monomial,
    pub hbar: u32,
}

/// Normal-ordered operator truncated above `ℏ^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylOp<C: Coeff = Rational> {
    ctx: Arc<Context>,
    order: usize,
    terms: BTreeMap<WeylWord, C>,
}

impl<C: Coeff> WeylOp<C> {
    pub fn zero(ctx: &Arc<Context>, order: usize) -> Self {
        WeylOp {
            ctx: ctx.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ctx: &Arc<Context>, order: usize, c: C) -> Self {
        let mut op = Self::zero(ctx, order);
        op.add_word(
            WeylWord {
                x: Monomial::one(),
                d: Monomial::one(),
                hbar: 0,
            },
            c,
        );
        op
    }

    pub fn one(ctx: &Arc<Context>, order: usize) -> Self {
        Self::scalar(ctx, order, C::one())
    }

    /// `ℏ` as an operator.
    pub fn hbar(ctx: &Arc<Context>, order: usize) -> Self {
        Self::word(ctx, order, Monomial::one(), Monomial::one(), 1, C::one())
    }

    /// Multiplication by `x_i`.
    pub fn x(ctx: &Arc<Context>, order: usize, i: usize) -> Result<Self> {
        ctx.check_index(i)?;
        Ok(Self::word(
            ctx,
            order,
            Monomial::var(i),
            Monomial::one(),
            0,
            C::one(),
        ))
    }

    /// `ŷ_i = ℏ∂_i`.
    pub fn dy(ctx: &Arc<Context>, order: usize, i: usize) -> Result<Self> {
        ctx.check_index(i)?;
        Ok(Self::word(
            ctx,
            order,
            Monomial::one(),
            Monomial::var(i),
            0,
            C::one(),
        ))
    }

    pub fn word(
        ctx: &Arc<Context>,
        order: usize,
        x: Monomial,
        d: Monomial,
        hbar: u32,
        c: C,
    ) -> Self {
        let mut op = Self::zero(ctx, order);
        op.add_word(WeylWord { x, d, hbar }, c);
        op
    }

    fn add_word(&mut self, w: WeylWord, c: C) {
        if w.hbar as usize > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylWord, &C)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && self.ctx.names() != other.ctx.names() {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx, self.order.min(other.order));
        for (w, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_word(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.ctx, self.order);
        for (w, v) in &self.terms {
            out.add_word(w.clone(), v.mul(c));
        }
        out
    }

    /// Multiply by `ℏ^k`.
    pub fn shift(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.ctx, self.order);
        for (w, v) in &self.terms {
            let mut w = w.clone();
            w.hbar += k;
            out.add_word(w, v.clone());
        }
        out
    }

    /// Operator composition `self · other`, rewritten to normal order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.ctx, order);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let base = w1.hbar + w2.hbar;
                if base as usize > order {
                    continue;
                }
                let c = c1.mul(c2);
                for (k, x, d, weight) in reorder(&w1.d, &w2.x, order as u32 - base) {
                    out.add_word(
                        WeylWord {
                            x: w1.x.mul(&x),
                            d: d.mul(&w2.d),
                            hbar: base + k,
                        },
                        c.mul(&C::from_rational(&weight)),
                    );
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx, self.order);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> WeylOp<D> {
        let mut out = WeylOp::zero(&self.ctx, self.order);
        for (w, c) in &self.terms {
            out.add_word(w.clone(), f(c));
        }
        out
    }

    /// `exp(−S/ℏ) · self · exp(S/ℏ)` applied to `1`, for a polynomial
    /// exponent `S`; entry `k` is the coefficient of `ℏ^k`.
    ///
    /// Uses `ŷ_i (F e^{S/ℏ}) = (ℏ ∂_i F + F ∂_i S) e^{S/ℏ}`.
    pub fn apply_conjugated(&self, s: &Poly<C>) -> Result<Vec<Poly<C>>> {
        if s.context().names() != self.ctx.names() {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: s.context().to_string(),
            });
        }
        let n = self.ctx.len();
        let grads: Vec<Poly<C>> = (0..n).map(|i| s.diff_unchecked(i)).collect();
        let mut out = vec![Poly::zero(s.context()); self.order + 1];
        for (w, c) in &self.terms {
            // F as ℏ-graded polynomials, starting from 1
            let mut f: Vec<Poly<C>> = vec![Poly::one(s.context())];
            for &(i, e) in w.d.exponents() {
                for _ in 0..e {
                    let mut next = vec![Poly::zero(s.context()); f.len() + 1];
                    for (k, fk) in f.iter().enumerate() {
                        next[k] = &next[k] + &(fk * &grads[i]);
                        next[k + 1] = &next[k + 1] + &fk.diff_unchecked(i);
                    }
                    f = next;
                }
            }
            let xm = Poly::monomial(s.context(), w.x.clone(), c.clone());
            for (k, fk) in f.iter().enumerate() {
                let h = k + w.hbar as usize;
                if h <= self.order {
                    out[h] = &out[h] + &(fk * &xm);
                }
            }
        }
        Ok(out)
    }
}

/// Terms of `ŷ^b x^c` in normal order: `(ℏ-power, x-part, ŷ-part, weight)`,
/// using `ŷ^b x^c = Σ_k C(b,k) C(c,k) k! ℏ^k x^{c−k} ŷ^{b−k}` per variable.
fn reorder(d: &Monomial, x: &Monomial, max_k: u32) -> Vec<(u32, Monomial, Monomial, Rational)> {
    let mut acc = vec![(
        0u32,
        Monomial::one(),
        Monomial::one(),
        Rational::from_integer(1.into()),
    )];
    let vars: std::collections::BTreeSet<usize> = d
        .exponents()
        .iter()
        .chain(x.exponents())
        .map(|&(v, _)| v)
        .collect();
    for v in vars {
        let (b, c) = (d.exponent(v), x.exponent(v));
        let mut next = Vec::new();
        for (h, xm, dm, w) in &acc {
            for k in 0..=b.min(c) {
                if h + k > max_k {
                    break;
                }
                let coef = Rational::from_integer(binomial(b, k) * binomial(c, k) * factorial(k));
                next.push((
                    h + k,
                    xm.mul(&Monomial::from_pairs(vec![(v, c - k)])),
                    dm.mul(&Monomial::from_pairs(vec![(v, b - k)])),
                    w * coef,
                ));
            }
        }
        acc = next;
    }
    acc
}

/// Weyl algebra `weyl_mul`.
pub fn weyl_mul<C: Coeff>(p: &WeylOp<C>, q: &WeylOp<C>) -> Result<WeylOp<C>> {
    p.mul(q)
}

/// Pairing of Darboux variables `(x_i, y_i)` in a phase-space context with
/// position variables `x_i` of the operator context.
#[derive(Clone, Debug)]
pub struct Polarization {
    phase: Arc<Context>,
    positions: Arc<Context>,
    x_of: Vec<usize>,
    y_of: Vec<usize>,
}

impl Polarization {
    /// `pairs` lists `(position name, momentum name)`; every phase-space
    /// variable must occur exactly once.
    pub fn new(phase: &Arc<Context>, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut seen = vec![false; phase.len()];
        let mut x_of = Vec::new();
        let mut y_of = Vec::new();
        for &(x, y) in pairs {
            let (xi, yi) = (phase.index_of(x)?, phase.index_of(y)?);
            for i in [xi, yi] {
                if seen[i] {
                    return Err(Error::InvalidArgument(format!(
                        "variable `{}` paired twice",
                        phase.name(i)
                    )));
                }
                seen[i] = true;
            }
            x_of.push(xi);
            y_of.push(yi);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::UnpairedVariable(phase.name(i).to_string()));
        }
        let positions = Context::new(x_of.iter().map(|&i| phase.name(i).to_string()));
        Ok(Polarization {
            phase: phase.clone(),
            positions,
            x_of,
            y_of,
        })
    }

    /// Plane `(x, y)` with `y ↦ ℏ∂_x`.
    pub fn plane(phase: &Arc<Context>) -> Result<Self> {
        Self::new(
            phase,
            &[(phase.name(0), phase.name(1.min(phase.len() - 1)))],
        )
    }

    pub fn phase(&self) -> &Arc<Context> {
        &self.phase
    }

    pub fn positions(&self) -> &Arc<Context> {
        &self.positions
    }

    /// Phase-space polynomial in the positions only, renamed into the
    /// operator context.
    pub fn restrict_positions<C: Coeff>(&self, f: &Poly<C>) -> Result<Poly<C>> {
        let mut map = vec![usize::MAX; self.phase.len()];
        for (k, &i) in self.x_of.iter().enumerate() {
            map[i] = k;
        }
        for (m, _) in f.terms() {
            if let Some(&(v, _)) = m.exponents().iter().find(|&&(v, _)| map[v] == usize::MAX) {
                return Err(Error::InvalidArgument(format!(
                    "`{}` is not a position variable",
                    self.phase.name(v)
                )));
            }
        }
        let map: Vec<usize> = map.into_iter().map(|i| i.min(self.x_of.len())).collect();
        f.reindex(&self.positions, &map)
    }
}

/// Symmetric-ordering quantisation of a phase-space polynomial.
pub fn phi<C: Coeff>(f: &Poly<C>, pol: &Polarization, order: usize) -> Result<WeylOp<C>> {
    if f.context().names() != pol.phase.names() {
        return Err(Error::ContextMismatch {
            left: pol.phase.to_string(),
            right: f.context().to_string(),
        });
    }
    let mut out = WeylOp::zero(&pol.positions, order);
    for (m, c) in f.terms() {
        let mut acc = vec![(
            0u32,
            Monomial::one(),
            Monomial::one(),
            Rational::from_integer(1.into()),
        )];
        for (k, (&xi, &yi)) in pol.x_of.iter().zip(&pol.y_of).enumerate() {
            let (a, b) = (m.exponent(xi), m.exponent(yi));
            if a == 0 && b == 0 {
                continue;
            }
            let mut next = Vec::new();
            for (h, xm, dm, w) in &acc {
                for j in 0..=a.min(b) {
                    if (h + j) as usize > order {
                        break;
                    }
                    // Sym(x^a y^b) = Σ_j C(a,j) C(b,j) j! (ℏ/2)^j x^{a−j} ŷ^{b−j}
                    let coef = Rational::new(
                        binomial(a, j) * binomial(b, j) * factorial(j),
                        num_bigint::BigInt::from(1) << j,
                    );
                    next.push((
                        h + j,
                        xm.mul(&Monomial::from_pairs(vec![(k, a - j)])),
                        dm.mul(&Monomial::from_pairs(vec![(k, b - j)])),
                        w * coef,
                    ));
                }
            }
            acc = next;
        }
        for (h, x, d, w) in acc {
            out.add_word(WeylWord { x, d, hbar: h }, c.mul(&C::from_rational(&w)));
        }
    }
    Ok(out)
}

/// ℏ-linear extension of [`phi`].
pub fn phi_series(f: &HSeries, pol: &Polarization) -> Result<WeylOp> {
    let mut out = WeylOp::zero(&pol.positions, f.order());
    for (k, fk) in f.coeffs().iter().enumerate() {
        out = out.add(&phi(fk, pol, f.order())?.shift(k as u32))?;
    }
    Ok(out)
}

/// Apply an operator to a series in the position variables; entry `k` of
/// the result is the `ℏ^k` part.
pub fn weyl_apply(p: &WeylOp, s: &XSeries) -> Result<Vec<XSeries>> {
    if s.context().names() != p.ctx.names() {
        return Err(Error::ContextMismatch {
            left: p.ctx.to_string(),
            right: s.context().to_string(),
        });
    }
    let mut out = vec![XSeries::zero(s.context(), s.cap()); p.order + 1];
    for (w, c) in &p.terms {
        let mut t = s.clone();
        let mut h = w.hbar as usize;
        for &(i, e) in w.d.exponents() {
            for _ in 0..e {
                t = t.derivative(i)?;
                h += 1;
            }
        }
        if h > p.order {
            continue;
        }
        let xm = XSeries::from_poly(
            &Poly::monomial(s.context(), w.x.clone(), c.clone()),
            s.cap(),
        );
        let term = xm.mul(&t)?;
        out[h] = out[h].add(&term)?.truncate(out[h].cap().min(term.cap()));
    }
    Ok(out)
}

impl<C: Coeff> fmt::Display for WeylOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().rev().enumerate() {
            // ŷ = ℏ∂ is printed with its ℏ made explicit
            let mut factors = Vec::new();
            let hp = w.hbar + w.d.degree();
            if hp == 1 {
                factors.push("ħ".to_string());
            } else if hp > 1 {
                factors.push(format!("ħ^{hp}"));
            }
            for &(i, e) in w.x.exponents() {
                let name = self.ctx.name(i);
                factors.push(if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                });
            }
            for &(i, e) in w.d.exponents() {
                let name = self.ctx.name(i);
                factors.push(if e == 1 {
                    format!("∂{name}")
                } else {
                    format!("∂{name}^{e}")
                });
            }
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let coef = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if factors.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coef}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn line() -> Arc<Context> {
        Context::new(["x"])
    }

    #[test]
    fn single_rewrite() {
        let ctx = line();
        let x = WeylOp::<Rational>::x(&ctx, 4, 0).unwrap();
        let d = WeylOp::<Rational>::dy(&ctx, 4, 0).unwrap();
        let h = WeylOp::<Rational>::hbar(&ctx, 4);
        assert_eq!(d.mul(&x).unwrap(), x.mul(&d).unwrap().add(&h).unwrap());
        let xdx = x.mul(&d).unwrap().mul(&x).unwrap();
        let expected = x
            .pow(2)
            .unwrap()
            .mul(&d)
            .unwrap()
            .add(&h.mul(&x).unwrap())
            .unwrap();
        assert_eq!(xdx, expected);
        assert_eq!(xdx.mul(&WeylOp::one(&ctx, 4)).unwrap(), xdx);
    }

    fn plane() -> (Arc<Context>, Polarization) {
        let ctx = Context::new(["x", "y"]);
        let pol = Polarization::plane(&ctx).unwrap();
        (ctx, pol)
    }

    #[test]
    fn phi_examples() {
        let (ctx, pol) = plane();
        let x = Poly::<Rational>::var(&ctx, 0).unwrap();
        let y = Poly::<Rational>::var(&ctx, 1).unwrap();
        let pos = pol.positions().clone();
        let xo = WeylOp::x(&pos, 4, 0).unwrap();
        let d = WeylOp::dy(&pos, 4, 0).unwrap();
        let h = WeylOp::hbar(&pos, 4);
        let half_h = h.scale(&rat(1, 2));
        assert_eq!(
            phi(&(&x * &y), &pol, 4).unwrap(),
            xo.mul(&d).unwrap().add(&half_h).unwrap()
        );
        assert_eq!(phi(&x.pow(2), &pol, 4).unwrap(), xo.pow(2).unwrap());
        let hc = &(&(-&y + x.pow(2)) + &(&x * &y).scale(&rat(2, 1))) + &y.pow(2);
        let got = phi(&hc, &pol, 4).unwrap();
        assert_eq!(got.to_string(), "x^2 + 2*ħ*x*∂x + ħ^2*∂x^2 - ħ*∂x + ħ");
        let applied = weyl_apply(&got, &XSeries::constant(&pos, rat(1, 1), 6)).unwrap();
        assert_eq!(applied[0].to_poly(), Poly::var(&pos, 0).unwrap().pow(2));
        assert_eq!(applied[1].to_poly(), Poly::one(&pos));
        assert!(applied[2..].iter().all(XSeries::is_zero));
    }

    #[test]
    fn unpaired_variable() {
        let ctx = Context::new(["x", "y", "z"]);
        assert!(matches!(
            Polarization::new(&ctx, &[("x", "y")]),
            Err(Error::UnpairedVariable(v)) if v == "z"
        ));
    }

    #[test]
    fn apply_derivative() {
        let ctx = line();
        let d = WeylOp::<Rational>::dy(&ctx, 4, 0).unwrap();
        let x2 = XSeries::from_poly(&Poly::var(&ctx, 0).unwrap().pow(2), 6);
        let out = weyl_apply(&d, &x2).unwrap();
        assert!(out[0].is_zero());
        assert_eq!(
            out[1].to_poly(),
            Poly::var(&ctx, 0).unwrap().scale(&rat(2, 1))
        );
        let z = weyl_apply(&WeylOp::zero(&ctx, 4), &x2).unwrap();
        assert!(z.iter().all(XSeries::is_zero));
    }

    #[test]
    fn conjugated_gaussian() {
        // ŷ + q x annihilates exp(−q x²/2ℏ)
        let ctx = line();
        let q = rat(3, 1);
        let op = WeylOp::<Rational>::dy(&ctx, 2, 0)
            .unwrap()
            .add(&WeylOp::x(&ctx, 2, 0).unwrap().scale(&q))
            .unwrap();
        let s = Poly::var(&ctx, 0).unwrap().pow(2).scale(&rat(-3, 2));
        assert!(op.apply_conjugated(&s).unwrap().iter().all(Poly::is_zero));
    }
}
