//! WKB exponents for plane curves and the λ(H) solution of `H ⋆ w = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Coeff, Context, Poly, Rational, XSeries};
use crate::error::{Error, Result};
use crate::poisson::BiVector;
use crate::star::{star_poly, StarContext};
use crate::weyl::{phi, Polarization, WeylOp};

/// Plane curve `H(x, y) = 0` through the origin, with the quantum shift
/// `j(ℏ) = Σ_k j_k ℏ^k` in `φ(H) ψ = ℏ j(ℏ) ψ`.
#[derive(Clone, Debug)]
pub struct CurveIdeal {
    h: Poly,
    j: Vec<Rational>,
}

impl CurveIdeal {
    pub fn new(h: Poly, j: Vec<Rational>) -> Result<Self> {
        if h.context().len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: h.context().len(),
            });
        }
        if !h.constant_term().is_zero() {
            return Err(Error::NotOnCurve(format!(
                "H(0, 0) = {} for H = {h}",
                h.constant_term()
            )));
        }
        Ok(CurveIdeal { h, j })
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn j(&self) -> &[Rational] {
        &self.j
    }

    fn base_context(&self) -> Arc<Context> {
        Context::new([self.h.context().name(0)])
    }
}

/// `Σ c x^a y^b ↦ Σ c x^a u^b` for a series `u` in the single variable `x`.
fn eval_on_branch(h: &Poly, u: &XSeries) -> Result<XSeries> {
    let ctx = u.context().clone();
    let mut acc = XSeries::zero(&ctx, u.cap());
    let mut powers = vec![XSeries::constant(&ctx, Rational::one(), u.cap())];
    for (m, c) in h.terms() {
        let (a, b) = (m.exponent(0), m.exponent(1) as usize);
        while powers.len() <= b {
            let next = powers.last().expect("nonempty").mul(u)?;
            powers.push(next);
        }
        let xa = Poly::monomial(
            &ctx,
            crate::algebra::Monomial::from_pairs(vec![(0, a)]),
            c.clone(),
        );
        acc = acc.add(&XSeries::from_poly(&xa, u.cap()).mul(&powers[b])?)?;
    }
    Ok(acc)
}

/// Branch `y = u_0(x)` of `H = 0` with `u_0(0) = 0`, by Newton iteration on
/// truncated series (`cap` is the highest kept degree).
pub fn branch_solve(h: &Poly, cap: usize) -> Result<XSeries> {
    if h.context().len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: h.context().len(),
        });
    }
    if !h.constant_term().is_zero() {
        return Err(Error::NotOnCurve(format!(
            "H(0, 0) = {}",
            h.constant_term()
        )));
    }
    let hy = h.diff(1)?;
    if hy.constant_term().is_zero() {
        return Err(Error::DegenerateBranch);
    }
    let ctx = Context::new([h.context().name(0)]);
    let mut u = XSeries::zero(&ctx, cap);
    // quadratic convergence: the error degree doubles each step
    for _ in 0..=usize::BITS {
        let step = eval_on_branch(h, &u)?.mul(&eval_on_branch(&hy, &u)?.inverse()?)?;
        if step.is_zero() {
            return Ok(u);
        }
        u = u.sub(&step)?;
    }
    Err(Error::UnsolvableOrder(0))
}

/// WKB exponent data: `ψ = exp((1/ℏ) Σ_g ℏ^g S_g)` with `u_g = S_g′`.
#[derive(Clone, Debug)]
pub struct WKBSolution {
    curve: CurveIdeal,
    u: Vec<XSeries>,
    s: Vec<XSeries>,
}

impl WKBSolution {
    pub fn u(&self) -> &[XSeries] {
        &self.u
    }

    pub fn s(&self) -> &[XSeries] {
        &self.s
    }

    pub fn curve(&self) -> &CurveIdeal {
        &self.curve
    }

    /// `exp(−S/ℏ) (φ(H) − ℏj) exp(S/ℏ)` by ℏ-order; every entry is zero up
    /// to its cap for a genuine solution.
    pub fn residual(&self) -> Result<Vec<XSeries>> {
        conjugated_residual(&self.curve, &self.u)
    }
}

/// Conjugated action of `φ(H) − ℏj` on `1`, given `u = Σ ℏ^g u_g`.
///
/// `ŷ^b` conjugates to `P_b` with `P_0 = 1`, `P_{b+1} = ℏ P_b′ + u P_b`.
fn conjugated_residual(curve: &CurveIdeal, u: &[XSeries]) -> Result<Vec<XSeries>> {
    let g_max = u.len() - 1;
    let ctx = u[0].context().clone();
    let cap = u.iter().map(XSeries::cap).min().expect("u_0 present");
    let pol = Polarization::plane(curve.h.context())?;
    let op: WeylOp = phi(&curve.h, &pol, g_max)?;
    let max_b = op.terms().map(|(w, _)| w.d.degree()).max().unwrap_or(0) as usize;

    let zero = XSeries::zero(&ctx, cap);
    let mut p: Vec<Vec<XSeries>> = vec![{
        let mut p0 = vec![zero.clone(); g_max + 1];
        p0[0] = XSeries::constant(&ctx, Rational::one(), cap);
        p0
    }];
    for b in 0..max_b {
        let prev = &p[b];
        let mut next = vec![zero.clone(); g_max + 1];
        for k in 0..=g_max {
            let mut acc = zero.clone();
            if k > 0 {
                acc = acc.add(&prev[k - 1].derivative(0)?)?;
            }
            for (g, ug) in u.iter().enumerate().take(k + 1) {
                acc = acc.add(&ug.mul(&prev[k - g])?)?;
            }
            next[k] = acc;
        }
        p.push(next);
    }

    let mut out = vec![zero.clone(); g_max + 1];
    for (w, c) in op.terms() {
        let b = w.d.degree() as usize;
        let xa = XSeries::from_poly(&Poly::monomial(&ctx, w.x.clone(), c.clone()), cap);
        for (k, pk) in p[b].iter().enumerate().take(g_max + 1) {
            let h = k + w.hbar as usize;
            if h > g_max || pk.is_zero() {
                continue;
            }
            out[h] = out[h].add(&xa.mul(pk)?)?;
        }
    }
    for (k, jk) in curve.j.iter().enumerate() {
        if k < g_max {
            out[k + 1] = out[k + 1].sub(&XSeries::constant(&ctx, jk.clone(), cap))?;
        }
    }
    Ok(out)
}

/// Solve `(φ(H) − ℏj) exp(S/ℏ) = 0` order by order up to `ℏ^orders`, each
/// `u_g` to degree `degree`.
pub fn wkb_solve(curve: &CurveIdeal, orders: usize, degree: usize) -> Result<WKBSolution> {
    // each order loses at most one degree to differentiation
    let work = degree + orders + 2;
    let u0 = branch_solve(&curve.h, work)?;
    let hy = curve.h.diff(1)?;
    let inv = eval_on_branch(&hy, &u0)?.inverse()?;
    let ctx = curve.base_context();
    let mut u = vec![u0];
    for g in 1..=orders {
        u.push(XSeries::zero(&ctx, work));
        let r = conjugated_residual(curve, &u)?;
        let ug = r[g].mul(&inv)?.neg();
        if ug.cap() <= degree {
            return Err(Error::UnsolvableOrder(g));
        }
        u[g] = ug;
    }
    let u: Vec<XSeries> = u.into_iter().map(|s| s.truncate(degree)).collect();
    let s = u
        .iter()
        .map(|ug| ug.integrate(0))
        .collect::<Result<Vec<_>>>()?;
    Ok(WKBSolution {
        curve: curve.clone(),
        u,
        s,
    })
}

/// Coefficients `λ_n` of `w = Σ λ_n s_n H^n` solving `H ⋆ w = 0`, where
/// the scale `s_n = (cℏ²)^{−⌊n/3⌋}` absorbs the curve's constant `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSeries {
    lam: Vec<Rational>,
}

/// `λ_{n+2} = −λ_{n−1} / ((n+1)(n+2))` from seeds `λ_0`, `λ_1`, with
/// `λ_2 = 0`; entries `λ_0..=λ_count`.
pub fn lambda_solve(seed0: Rational, seed1: Rational, count: usize) -> Result<LambdaSeries> {
    if count < 3 {
        return Err(Error::InvalidArgument("need at least λ_0..λ_3".into()));
    }
    let mut lam = vec![Rational::zero(); count + 1];
    lam[0] = seed0;
    lam[1] = seed1;
    for m in 3..=count {
        let n = (m - 2) as i64;
        lam[m] = -&lam[m - 3] / Rational::from_integer(((n + 1) * (n + 2)).into());
    }
    Ok(LambdaSeries { lam })
}

impl LambdaSeries {
    pub fn from_coefficients(lam: Vec<Rational>) -> Self {
        LambdaSeries { lam }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.lam
    }

    pub fn len(&self) -> usize {
        self.lam.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lam.is_empty()
    }

    /// Whether `λ_{n+2}(n+1)(n+2) + λ_{n−1} = 0` for every computed `n`,
    /// and `λ_2 = 0`.
    pub fn satisfies_recurrence(&self) -> bool {
        if self.lam.get(2).is_some_and(|l| !l.is_zero()) {
            return false;
        }
        (3..self.lam.len()).all(|m| {
            let n = (m - 2) as i64;
            (&self.lam[m] * Rational::from_integer(((n + 1) * (n + 2)).into()) + &self.lam[m - 3])
                .is_zero()
        })
    }

    /// Replace `λ_n`.
    pub fn with_coefficient(&self, n: usize, value: Rational) -> Self {
        let mut lam = self.lam.clone();
        if n >= lam.len() {
            lam.resize(n + 1, Rational::zero());
        }
        lam[n] = value;
        LambdaSeries { lam }
    }
}

/// Polynomial coefficients indexed by a (possibly negative) power of ℏ.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentResidual {
    terms: BTreeMap<i64, Poly>,
}

impl LaurentResidual {
    fn add(&mut self, k: i64, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(k)
            .or_insert_with(|| Poly::zero(p.context()));
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Poly)> + '_ {
        self.terms.iter().map(|(&k, p)| (k, p))
    }
}

impl fmt::Display for LaurentResidual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, p)| format!("({p})*ħ^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The constant `c` in `H ⋆ H^n = H^{n+1} + c ℏ² n(n−1) H^{n−2}` for a
/// quadratic `H`, read off the Hessian and `π` without using the star
/// product.
pub fn airy_constant(h: &Poly, pi: &BiVector) -> Result<Rational> {
    let n = pi.dim();
    if h.context().len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.context().len(),
        });
    }
    if h.degree().unwrap_or(0) > 2 {
        return Err(Error::DegreeTooHigh {
            found: h.degree().unwrap_or(0) as usize,
            max: 2,
        });
    }
    let grad: Vec<Poly> = (0..n).map(|i| h.diff_unchecked(i)).collect();
    let hess: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| grad[i].diff_unchecked(k).constant_term())
                .collect()
        })
        .collect();
    let eighth = Rational::new(1.into(), 8.into());
    let mut quad = Poly::zero(h.context());
    let mut lin = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            let pij = pi.entry(i, j);
            if pij.is_zero() {
                continue;
            }
            for k in 0..n {
                let hik = &hess[i][k];
                if hik.is_zero() {
                    continue;
                }
                for l in 0..n {
                    let pkl = pi.entry(k, l);
                    if pkl.is_zero() {
                        continue;
                    }
                    let w = pij * pkl * hik * &eighth;
                    quad = &quad + &(&grad[j] * &grad[l]).scale(&w);
                    lin += &w * &hess[j][l];
                }
            }
        }
    }
    if !lin.is_zero() {
        return Err(Error::NotAiryReducible(format!(
            "first-derivative coefficient {lin} is nonzero"
        )));
    }
    if !quad.is_constant() || quad.is_zero() {
        return Err(Error::NotAiryReducible(format!(
            "second-derivative coefficient `{quad}` is not a nonzero constant"
        )));
    }
    Ok(quad.constant_term())
}

/// `H ⋆ w` for `w = Σ_{n ≤ M} λ_n s_n H^n`, minus the top-degree terms
/// `Σ_{n > M−3} λ_n s_n H^{n+1}` whose partners `λ_{n+3}` lie beyond the
/// truncation. Vanishes identically when `λ` satisfies the recurrence.
pub fn lambda_residual(
    curve: &CurveIdeal,
    lambda: &LambdaSeries,
    ctx: &StarContext,
) -> Result<LaurentResidual> {
    if curve.j.iter().any(|j| !j.is_zero()) {
        return Err(Error::InvalidArgument(
            "the λ(H) equation is H ⋆ w = 0; the quantum shift must vanish".into(),
        ));
    }
    if ctx.order() < 2 {
        return Err(Error::InvalidArgument("ℏ order must be at least 2".into()));
    }
    let h = &curve.h;
    let c = airy_constant(h, ctx.bivector())?;
    let top = lambda.lam.len().saturating_sub(1);
    let mut out = LaurentResidual {
        terms: BTreeMap::new(),
    };
    let mut hn = Poly::one(h.context());
    for (n, ln) in lambda.lam.iter().enumerate() {
        if !ln.is_zero() {
            let m = (n / 3) as i32;
            let scale = ln * c.pow(-m);
            let base = -2 * m as i64;
            let prod = star_poly(h, &hn, ctx)?;
            for (k, pk) in prod.coeffs().iter().enumerate() {
                out.add(base + k as i64, &pk.scale(&scale));
            }
            if n + 3 > top {
                out.add(base, &(&hn * h).scale(&-scale));
            }
        }
        hn = &hn * h;
    }
    Ok(out)
}

/// Star context for the plane convention `{y, x} = 1`.
pub fn plane_star(order: usize) -> Result<StarContext> {
    StarContext::new(BiVector::plane(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{binomial, factorial, rat};
    use num_bigint::BigInt;

    fn conic() -> Poly {
        let ctx = Context::new(["x", "y"]);
        let x = Poly::var(&ctx, 0).unwrap();
        let y = Poly::var(&ctx, 1).unwrap();
        &(&(-&y + x.pow(2)) + &(&x * &y).scale(&rat(2, 1))) + &y.pow(2)
    }

    #[test]
    fn catalan_branch() {
        let h = conic();
        let u0 = branch_solve(&h, 12).unwrap();
        let coeffs = u0.univariate_coeffs().unwrap();
        for n in 1..=10u32 {
            let catalan =
                Rational::from_integer(factorial(2 * n) / (factorial(n + 1) * factorial(n)));
            assert_eq!(coeffs[n as usize + 1], catalan);
        }
        assert!(eval_on_branch(&h, &u0).unwrap().is_zero());
    }

    #[test]
    fn degenerate_and_off_curve() {
        let ctx = Context::new(["x", "y"]);
        let x = Poly::var(&ctx, 0).unwrap();
        let y = Poly::var(&ctx, 1).unwrap();
        assert_eq!(
            branch_solve(&(&y.pow(2) - &x), 6).unwrap_err(),
            Error::DegenerateBranch
        );
        assert!(matches!(
            CurveIdeal::new(&y + &Poly::one(&ctx), vec![]),
            Err(Error::NotOnCurve(_))
        ));
    }

    #[test]
    fn genus_one() {
        let curve = CurveIdeal::new(conic(), vec![rat(1, 1)]).unwrap();
        let sol = wkb_solve(&curve, 2, 10).unwrap();
        let u1 = sol.u()[1].univariate_coeffs().unwrap();
        for n in 1..=8u32 {
            let expected = Rational::from_integer(BigInt::from(4).pow(n) - binomial(2 * n, n));
            assert_eq!(u1[n as usize], expected, "n = {n}");
        }
        assert!(sol.residual().unwrap().iter().all(XSeries::is_zero));
        // without the shift the ℏ-order equation gives 1/(1 − 4x)
        let plain = wkb_solve(&CurveIdeal::new(conic(), vec![]).unwrap(), 1, 6).unwrap();
        let u1 = plain.u()[1].univariate_coeffs().unwrap();
        assert_eq!(&u1[..4], &[rat(1, 1), rat(4, 1), rat(16, 1), rat(64, 1)]);
    }

    #[test]
    fn linear_curve() {
        let ctx = Context::new(["x", "y"]);
        let q = rat(3, 2);
        let h = &Poly::var(&ctx, 0).unwrap().scale(&q) - &Poly::var(&ctx, 1).unwrap();
        let sol = wkb_solve(&CurveIdeal::new(h, vec![]).unwrap(), 3, 8).unwrap();
        let s0 = sol.s()[0].univariate_coeffs().unwrap();
        assert_eq!(s0[2], rat(3, 4));
        assert!(s0.iter().enumerate().all(|(i, c)| i == 2 || c.is_zero()));
        assert!(sol.s()[1..].iter().all(XSeries::is_zero));
    }

    #[test]
    fn lambda_values() {
        let l = lambda_solve(rat(1, 1), rat(0, 1), 9).unwrap();
        assert_eq!(l.coefficients()[3], rat(-1, 6));
        assert_eq!(l.coefficients()[6], rat(1, 180));
        assert!(l.satisfies_recurrence());
        let l = lambda_solve(rat(0, 1), rat(1, 1), 9).unwrap();
        assert_eq!(l.coefficients()[4], rat(-1, 12));
        assert!(lambda_solve(rat(0, 1), rat(0, 1), 9)
            .unwrap()
            .coefficients()
            .iter()
            .all(Rational::is_zero));
    }

    #[test]
    fn lambda_residual_vanishes() {
        let curve = CurveIdeal::new(conic(), vec![]).unwrap();
        let sc = plane_star(4).unwrap();
        assert_eq!(airy_constant(curve.h(), sc.bivector()).unwrap(), rat(1, 4));
        for seeds in [(1, 0), (0, 1), (2, -3)] {
            let l = lambda_solve(rat(seeds.0, 1), rat(seeds.1, 1), 9).unwrap();
            assert!(lambda_residual(&curve, &l, &sc).unwrap().is_zero());
        }
        let zero = lambda_solve(rat(0, 1), rat(0, 1), 9).unwrap();
        assert!(lambda_residual(&curve, &zero, &sc).unwrap().is_zero());
        let l = lambda_solve(rat(1, 1), rat(0, 1), 9).unwrap();
        let bad = l.with_coefficient(3, rat(-1, 5));
        assert!(!bad.satisfies_recurrence());
        assert!(!lambda_residual(&curve, &bad, &sc).unwrap().is_zero());
    }
}
