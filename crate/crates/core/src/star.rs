//! Exponential star product `f ⋆ g = prod ∘ exp((ℏ/2) π)(f ⊗ g)`.
//!
//! The order-`k` coefficient is `(1/2)^k / k! · prod(π^k(f ⊗ g))`, so the
//! `ℏ²` term carries `1/8` in front of `π^{ij} π^{kl} ∂_i ∂_k f ∂_j ∂_l g`.

use std::sync::Arc;

use crate::algebra::{factorial, Coeff, Context, HSeries, Matrix, Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::poisson::{BiVector, GaugePart, TensorSum};

/// Bi-vector, optional symmetric part and ℏ order defining a star product.
#[derive(Clone, Debug)]
pub struct StarContext {
    bivector: BiVector,
    gauge: Option<GaugePart>,
    order: usize,
    braided: bool,
}

impl StarContext {
    pub fn new(bivector: BiVector, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("ℏ order must be at least 1".into()));
        }
        Ok(StarContext {
            bivector,
            gauge: None,
            order,
            braided: false,
        })
    }

    /// Star product for the non-skew bi-map `π + γ`.
    pub fn with_gauge(mut self, gauge: GaugePart) -> Result<Self> {
        if gauge.dim() != self.bivector.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.bivector.dim(),
                found: gauge.dim(),
            });
        }
        self.gauge = Some(gauge);
        Ok(self)
    }

    pub fn bivector(&self) -> &BiVector {
        &self.bivector
    }

    pub fn gauge(&self) -> Option<&GaugePart> {
        self.gauge.as_ref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_braided(&self) -> bool {
        self.braided
    }

    pub fn dim(&self) -> usize {
        self.bivector.dim()
    }

    /// Full bi-map matrix `π + γ`.
    pub fn matrix(&self) -> Matrix<Rational> {
        match &self.gauge {
            Some(g) => self
                .bivector
                .matrix()
                .add(g.matrix())
                .expect("dimensions checked"),
            None => self.bivector.matrix().clone(),
        }
    }

    fn check(&self, ctx: &Context) -> Result<()> {
        if ctx.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: ctx.len(),
            });
        }
        Ok(())
    }

    /// The context's bi-map on tensor slots `a`, `b`; braided contexts use
    /// `−(π ∘ P)`.
    pub fn apply_bimap<C: Coeff>(
        &self,
        t: &TensorSum<C>,
        a: usize,
        b: usize,
    ) -> Result<TensorSum<C>> {
        let m = self.matrix();
        if self.braided {
            Ok(t.swap(a, b)?.apply_bimap(&m, a, b)?.scale(&C::one().neg()))
        } else {
            t.apply_bimap(&m, a, b)
        }
    }

    /// `Σ_{k ≤ max} (1/2)^k / k! · prod(π^k(f ⊗ g))`, indexed by `k`.
    fn poly_star(&self, f: &Poly, g: &Poly, max: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::with_capacity(max + 1);
        let mut t = TensorSum::pair(f, g)?;
        for k in 0..=max {
            if t.is_zero() {
                break;
            }
            let w = Rational::new(1.into(), factorial(k as u32) << k);
            out.push(t.prod().scale(&w));
            if k < max {
                t = self.apply_bimap(&t, 0, 1)?;
            }
        }
        Ok(out)
    }
}

/// `f ⋆ g` truncated at the smaller of the context order and the operands'.
pub fn star(f: &HSeries, g: &HSeries, ctx: &StarContext) -> Result<HSeries> {
    f.coeff(0).check_context(&g.coeff(0))?;
    ctx.check(f.context())?;
    let order = ctx.order.min(f.order()).min(g.order());
    let mut acc = vec![Poly::zero(f.context()); order + 1];
    for (a, fa) in f.coeffs().iter().enumerate().take(order + 1) {
        if fa.is_zero() {
            continue;
        }
        for (b, gb) in g.coeffs().iter().enumerate().take(order + 1 - a) {
            if gb.is_zero() {
                continue;
            }
            for (k, term) in ctx
                .poly_star(fa, gb, order - a - b)?
                .into_iter()
                .enumerate()
            {
                acc[a + b + k] = &acc[a + b + k] + &term;
            }
        }
    }
    HSeries::from_coeffs(f.context(), acc, order)
}

/// Star product of two polynomials.
pub fn star_poly(f: &Poly, g: &Poly, ctx: &StarContext) -> Result<HSeries> {
    star(
        &HSeries::from_poly(f.clone(), ctx.order),
        &HSeries::from_poly(g.clone(), ctx.order),
        ctx,
    )
}

/// `f ⋆ g − g ⋆ f`.
pub fn commutator(f: &HSeries, g: &HSeries, ctx: &StarContext) -> Result<HSeries> {
    star(f, g, ctx)?.sub(&star(g, f, ctx)?)
}

/// `Σ_{j,k} γ^{jk} ∂_j ∂_k f`.
fn gauge_laplacian(f: &Poly, gamma: &Matrix<Rational>) -> Poly {
    let n = gamma.rows();
    let mut out = Poly::zero(f.context());
    for j in 0..n {
        let dj = f.diff_unchecked(j);
        if dj.is_zero() {
            continue;
        }
        for k in 0..n {
            let c = gamma.get(j, k);
            if !c.is_zero() {
                out = &out + &dj.diff_unchecked(k).scale(c);
            }
        }
    }
    out
}

/// `exp((ℏ/4) γ^{jk} ∂_j ∂_k) f` truncated at `ℏ^order`.
pub fn gauge_map(f: &HSeries, gamma: &GaugePart, order: usize) -> Result<HSeries> {
    if f.context().len() != gamma.dim() {
        return Err(Error::DimensionMismatch {
            expected: gamma.dim(),
            found: f.context().len(),
        });
    }
    let order = order.min(f.order());
    let mut acc = vec![Poly::zero(f.context()); order + 1];
    for (a, fa) in f.coeffs().iter().enumerate().take(order + 1) {
        let mut term = fa.clone();
        for k in 0..=order - a {
            if term.is_zero() {
                break;
            }
            let w = Rational::new(1.into(), factorial(k as u32) << (2 * k));
            acc[a + k] = &acc[a + k] + &term.scale(&w);
            term = gauge_laplacian(&term, gamma.matrix());
        }
    }
    HSeries::from_coeffs(f.context(), acc, order)
}

/// Same data with the braided bi-map `π̃ = −π ∘ P`.
pub fn braid(ctx: &StarContext) -> StarContext {
    StarContext {
        braided: !ctx.braided,
        ..ctx.clone()
    }
}

/// `(id⊗π̃)(π̃⊗id)(id⊗π̃) t − (π̃⊗id)(id⊗π̃)(π̃⊗id) t` on a three-slot tensor,
/// with `π̃` the bi-map of `ctx`.
pub fn yang_baxter_residual<C: Coeff>(t: &TensorSum<C>, ctx: &StarContext) -> Result<TensorSum<C>> {
    if t.factors() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: t.factors(),
        });
    }
    let left = ctx.apply_bimap(&ctx.apply_bimap(&ctx.apply_bimap(t, 1, 2)?, 0, 1)?, 1, 2)?;
    let right = ctx.apply_bimap(&ctx.apply_bimap(&ctx.apply_bimap(t, 0, 1)?, 1, 2)?, 0, 1)?;
    left.sub(&right)
}

/// Star product evaluated by enumerating Wick pairings between the factors
/// of each pair of monomials.
///
/// A set of `k` disjoint pairs (left factor, right factor) contributes
/// `(ℏ/2)^k Π π^{ij}` times the uncontracted factors; the `1/k!` of the
/// exponential cancels against the orderings of the pairs. This shares no
/// code with [`star`] beyond polynomial arithmetic.
pub fn star_wick_oracle(f: &Poly, g: &Poly, ctx: &StarContext) -> Result<HSeries> {
    f.check_context(g)?;
    ctx.check(f.context())?;
    if ctx.braided {
        return Err(Error::InvalidArgument(
            "the pairing oracle covers unbraided bi-maps only".into(),
        ));
    }
    let m = ctx.matrix();
    let order = ctx.order;
    let mut acc = vec![Poly::zero(f.context()); order + 1];
    for (mf, cf) in f.terms() {
        let left = slots(mf);
        for (mg, cg) in g.terms() {
            let right = slots(mg);
            let mut used = vec![false; right.len()];
            let mut pairing = Pairing {
                left: &left,
                right: &right,
                matrix: &m,
                order,
                ctx: f.context(),
                out: &mut acc,
            };
            let base = cf * cg;
            pairing.walk(0, &mut used, 0, base, Vec::new());
        }
    }
    HSeries::from_coeffs(f.context(), acc, order)
}

/// One variable index per factor of the monomial.
fn slots(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
        .collect()
}

struct Pairing<'a> {
    left: &'a [usize],
    right: &'a [usize],
    matrix: &'a Matrix<Rational>,
    order: usize,
    ctx: &'a Arc<Context>,
    out: &'a mut Vec<Poly>,
}

impl Pairing<'_> {
    /// Decide for left slot `i` whether it stays free or pairs with an unused
    /// right slot; `free` collects the uncontracted left variables.
    fn walk(
        &mut self,
        i: usize,
        used: &mut [bool],
        k: usize,
        weight: Rational,
        mut free: Vec<usize>,
    ) {
        if i == self.left.len() {
            let mut exps: Vec<(usize, u32)> = free.iter().map(|&v| (v, 1)).collect();
            exps.extend(
                self.right
                    .iter()
                    .zip(used.iter())
                    .filter(|(_, &u)| !u)
                    .map(|(&v, _)| (v, 1)),
            );
            let w = weight * Rational::new(1.into(), num_bigint::BigInt::from(1) << k);
            let term = Poly::monomial(self.ctx, Monomial::from_pairs(exps), w);
            self.out[k] = &self.out[k] + &term;
            return;
        }
        let vi = self.left[i];
        if k < self.order {
            for j in 0..self.right.len() {
                if used[j] {
                    continue;
                }
                let p = self.matrix.get(vi, self.right[j]);
                if p.is_zero() {
                    continue;
                }
                used[j] = true;
                self.walk(i + 1, used, k + 1, &weight * p, free.clone());
                used[j] = false;
            }
        }
        free.push(vi);
        self.walk(i + 1, used, k, weight, free);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn plane() -> (Arc<Context>, Poly, Poly, StarContext) {
        let ctx = Context::new(["x", "y"]);
        let x = Poly::var(&ctx, 0).unwrap();
        let y = Poly::var(&ctx, 1).unwrap();
        (ctx, x, y, StarContext::new(BiVector::plane(), 4).unwrap())
    }

    fn hs(ctx: &Arc<Context>, c: &[Poly]) -> HSeries {
        HSeries::from_coeffs(ctx, c.to_vec(), 4).unwrap()
    }

    #[test]
    fn plane_anchors() {
        let (ctx, x, y, sc) = plane();
        let half = Poly::constant(&ctx, rat(1, 2));
        assert_eq!(
            star_poly(&x, &y, &sc).unwrap(),
            hs(&ctx, &[&x * &y, -&half])
        );
        assert_eq!(star_poly(&y, &x, &sc).unwrap(), hs(&ctx, &[&x * &y, half]));
        assert_eq!(star_poly(&x, &x, &sc).unwrap(), hs(&ctx, &[x.pow(2)]));
        assert_eq!(star_poly(&y, &y, &sc).unwrap(), hs(&ctx, &[y.pow(2)]));
        let f = &x.pow(3) + &y;
        assert_eq!(
            star_poly(&f, &Poly::one(&ctx), &sc).unwrap(),
            hs(&ctx, &[f])
        );
    }

    #[test]
    fn second_order_coefficient_is_one_eighth() {
        // x² ⋆ y² = x²y² − 2ℏxy + ℏ²/2 with π^{xy} = −1
        let (ctx, x, y, sc) = plane();
        let got = star_poly(&x.pow(2), &y.pow(2), &sc).unwrap();
        let expected = hs(
            &ctx,
            &[
                &x.pow(2) * &y.pow(2),
                (&x * &y).scale(&rat(-2, 1)),
                Poly::constant(&ctx, rat(1, 2)),
            ],
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn commutator_recovers_bracket() {
        let (ctx, x, y, sc) = plane();
        let c = commutator(
            &HSeries::from_poly(y.clone(), 4),
            &HSeries::from_poly(x.clone(), 4),
            &sc,
        )
        .unwrap();
        assert_eq!(c.div_hbar().unwrap().coeff(0), Poly::one(&ctx));
        let f = HSeries::from_poly(&x.pow(2) * &y, 4);
        assert!(commutator(&f, &f, &sc).unwrap().is_zero());
    }

    #[test]
    fn gauge_examples() {
        let (ctx, x, y, _) = plane();
        let g = GaugePart::new(
            Matrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]])
                .unwrap(),
        )
        .unwrap();
        let f = HSeries::from_poly(&x * &y, 4);
        assert_eq!(
            gauge_map(&f, &g, 4).unwrap(),
            hs(&ctx, &[&x * &y, Poly::constant(&ctx, rat(1, 2))])
        );
        assert_eq!(gauge_map(&f, &GaugePart::zero(2), 4).unwrap(), f);
        let c = HSeries::from_poly(Poly::from_int(&ctx, 5), 4);
        assert_eq!(gauge_map(&c, &g, 4).unwrap(), c);
    }

    #[test]
    fn braided_bracket_and_yang_baxter() {
        let (_, x, y, sc) = plane();
        let br = braid(&sc);
        let t = TensorSum::pair(&x, &y).unwrap();
        let via_pi = sc.apply_bimap(&t, 0, 1).unwrap().prod();
        let via_braid = br.apply_bimap(&t, 0, 1).unwrap().prod();
        assert_eq!(via_pi, via_braid);
        let t3 = TensorSum::pure(&[x.clone(), y.clone(), x.clone()]).unwrap();
        assert!(yang_baxter_residual(&t3, &br).unwrap().is_zero());
        let zero = StarContext::new(BiVector::zero(2), 2).unwrap();
        assert!(braid(&zero).apply_bimap(&t, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn wick_matches_star() {
        let (ctx, x, y, sc) = plane();
        let f = &(&x.pow(2) * &y) + &y.pow(3);
        let g = &(&x * &y.pow(2)) - &x.pow(3);
        assert_eq!(
            star_wick_oracle(&f, &g, &sc).unwrap(),
            star_poly(&f, &g, &sc).unwrap()
        );
        let half = Poly::constant(&ctx, rat(1, 2));
        assert_eq!(
            star_wick_oracle(&x, &y, &sc).unwrap(),
            hs(&ctx, &[&x * &y, -&half])
        );
    }
}
