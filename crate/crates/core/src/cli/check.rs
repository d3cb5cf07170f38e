//! Seeded invariant suites behind `dquant check`.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::output::SuiteResult;
use super::parse::parse_expr;
use crate::algebra::{rat, Coeff, Context, HSeries, Matrix, Monomial, Poly, Rational, XSeries};
use crate::error::Result;
use crate::poisson::{bracket, is_coisotropic, BiVector, GaugePart, TensorSum};
use crate::reduction::{extend_coisotropic, reduce_wavefunction, transversality, Ks4d};
use crate::star::{
    braid, commutator, gauge_map, star, star_poly, star_wick_oracle, yang_baxter_residual,
    StarContext,
};
use crate::weyl::{phi, phi_series, Polarization};
use crate::wkb::{lambda_residual, lambda_solve, plane_star, wkb_solve, CurveIdeal};

pub const SUITES: &[&str] = &[
    "star-anchors",
    "bracket",
    "associativity",
    "gauge",
    "yang-baxter",
    "phi",
    "wick",
    "round-trip",
    "conic",
    "lambda",
    "reduction",
    "transversality",
    "coisotropy",
];

/// Small rational in `[−4, 4]` with denominator at most 3.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Random polynomial with up to `terms` terms of total degree at most
/// `degree`.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: &Arc<Context>, degree: u32, terms: usize) -> Poly {
    let n = ctx.len();
    let picked = (0..rng.gen_range(1..=terms)).map(|_| {
        let mut budget = rng.gen_range(0..=degree);
        let mut exps = vec![0u32; n];
        while budget > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        (Monomial::from_exponents(&exps), small_rational(rng))
    });
    Poly::from_terms(ctx, picked.collect::<Vec<_>>())
}

pub fn random_monomial<R: Rng>(rng: &mut R, ctx: &Arc<Context>, degree: u32) -> Poly {
    let n = ctx.len();
    let mut exps = vec![0u32; n];
    for _ in 0..rng.gen_range(0..=degree) {
        exps[rng.gen_range(0..n)] += 1;
    }
    Poly::monomial(
        ctx,
        Monomial::from_exponents(&exps),
        Rational::from_integer(1.into()),
    )
}

pub fn random_bivector<R: Rng>(rng: &mut R, dim: usize) -> BiVector {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let v = small_rational(rng);
            m.set(j, i, -&v);
            m.set(i, j, v);
        }
    }
    BiVector::new(m).expect("skew by construction")
}

pub fn random_gauge<R: Rng>(rng: &mut R, dim: usize) -> GaugePart {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v = small_rational(rng);
            m.set(j, i, v.clone());
            m.set(i, j, v);
        }
    }
    GaugePart::new(m).expect("symmetric by construction")
}

fn names(dim: usize) -> Arc<Context> {
    Context::new((1..=dim).map(|i| format!("q{i}")))
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: Result<bool>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        let failed = match ok {
            Ok(true) => None,
            Ok(false) => Some(describe()),
            Err(e) => Some(format!("{}: {e}", describe())),
        };
        if let Some(msg) = failed {
            self.failures += 1;
            self.first.get_or_insert(msg);
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first,
        }
    }
}

/// Case counts for the random suites.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub pairs: usize,
    pub order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            pairs: 50,
            order: 4,
        }
    }
}

pub fn run_suite(name: &str, seed: u64, budget: Budget) -> Option<SuiteResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let rng = &mut rng;
    let order = budget.order;
    let pairs = budget.pairs;
    let result = match name {
        "star-anchors" => {
            let mut t = Tally::new("star-anchors");
            let ctx = Context::new(["x", "y"]);
            let sc = plane_star(order).expect("order ≥ 1");
            let p = |s: &str| parse_expr(s, &ctx).expect("fixed input");
            let half = Poly::constant(&ctx, rat(1, 2));
            let cases = [
                ("x", "y", vec![p("x*y"), -&half]),
                ("y", "x", vec![p("x*y"), half.clone()]),
                ("x", "x", vec![p("x^2")]),
                ("y", "y", vec![p("y^2")]),
            ];
            for (f, g, want) in cases {
                let ok = star_poly(&p(f), &p(g), &sc)
                    .map(|s| s == HSeries::from_coeffs(&ctx, want, order).expect("same context"));
                t.record(ok, || format!("{f} ⋆ {g}"));
            }
            t
        }
        "bracket" => {
            let mut t = Tally::new("bracket");
            for _ in 0..pairs.max(100) {
                let dim = 2 * rng.gen_range(1..=2);
                let ctx = names(dim);
                let b = random_bivector(rng, dim);
                let sc = StarContext::new(b.clone(), 2).expect("order 2");
                let f = random_poly(rng, &ctx, 3, 4);
                let g = random_poly(rng, &ctx, 3, 4);
                let ok = (|| {
                    let c = commutator(
                        &HSeries::from_poly(f.clone(), 2),
                        &HSeries::from_poly(g.clone(), 2),
                        &sc,
                    )?;
                    let scaled = c.div_hbar().expect("commutator is O(ℏ)");
                    Ok(scaled.coeff(0) == bracket(&f, &g, &b)?)
                })();
                t.record(ok, || format!("f = {f}, g = {g}"));
            }
            t
        }
        "associativity" => {
            let mut t = Tally::new("associativity");
            for _ in 0..pairs {
                let dim = rng.gen_range(1..=4);
                let ctx = names(dim);
                let sc = StarContext::new(random_bivector(rng, dim), order).expect("order ≥ 1");
                let [f, g, h] =
                    [0; 3].map(|_| HSeries::from_poly(random_poly(rng, &ctx, 3, 3), order));
                let ok = (|| {
                    Ok(star(&star(&f, &g, &sc)?, &h, &sc)? == star(&f, &star(&g, &h, &sc)?, &sc)?)
                })();
                t.record(ok, || {
                    format!("{} / {} / {}", f.coeff(0), g.coeff(0), h.coeff(0))
                });
            }
            t
        }
        "gauge" => {
            let mut t = Tally::new("gauge");
            for _ in 0..pairs {
                let dim = rng.gen_range(1..=4);
                let ctx = names(dim);
                let b = random_bivector(rng, dim);
                let gamma = random_gauge(rng, dim);
                let plain = StarContext::new(b.clone(), order).expect("order ≥ 1");
                let gauged = StarContext::new(b, order)
                    .and_then(|s| s.with_gauge(gamma.clone()))
                    .expect("matching dimensions");
                let f = HSeries::from_poly(random_poly(rng, &ctx, 3, 3), order);
                let g = HSeries::from_poly(random_poly(rng, &ctx, 3, 3), order);
                let ok = (|| {
                    let lhs = gauge_map(&star(&f, &g, &plain)?, &gamma, order)?;
                    let rhs = star(
                        &gauge_map(&f, &gamma, order)?,
                        &gauge_map(&g, &gamma, order)?,
                        &gauged,
                    )?;
                    Ok(lhs == rhs)
                })();
                t.record(ok, || format!("f = {}, g = {}", f.coeff(0), g.coeff(0)));
            }
            t
        }
        "yang-baxter" => {
            let mut t = Tally::new("yang-baxter");
            for _ in 0..pairs.max(20) {
                let dim = rng.gen_range(1..=4);
                let ctx = names(dim);
                let sc = braid(&StarContext::new(random_bivector(rng, dim), 1).expect("order 1"));
                let parts = [0; 3].map(|_| random_monomial(rng, &ctx, 3));
                let ok = TensorSum::pure(&parts)
                    .and_then(|ts| yang_baxter_residual(&ts, &sc))
                    .map(|r| r.is_zero());
                t.record(ok, || format!("{} ⊗ {} ⊗ {}", parts[0], parts[1], parts[2]));
            }
            t
        }
        "phi" => {
            let mut t = Tally::new("phi");
            let ctx = Context::new(["x", "y"]);
            let pol = Polarization::plane(&ctx).expect("plane");
            let monos: Vec<Poly> = (0..=4u32)
                .flat_map(|d| (0..=d).map(move |a| (a, d - a)))
                .map(|(a, b)| Poly::monomial(&ctx, Monomial::from_exponents(&[a, b]), rat(1, 1)))
                .collect();
            let mut cases: Vec<(Poly, Poly)> = monos
                .iter()
                .flat_map(|f| monos.iter().map(move |g| (f.clone(), g.clone())))
                .collect();
            for _ in 0..pairs {
                cases.push((random_poly(rng, &ctx, 4, 4), random_poly(rng, &ctx, 4, 4)));
            }
            for (f, g) in cases {
                let ok = phi_homomorphism(&f, &g, &pol);
                t.record(ok, || format!("f = {f}, g = {g}"));
            }
            t
        }
        "wick" => {
            let mut t = Tally::new("wick");
            for _ in 0..pairs {
                let dim = rng.gen_range(1..=4);
                let ctx = names(dim);
                let sc = StarContext::new(random_bivector(rng, dim), 3).expect("order 3");
                let f = random_poly(rng, &ctx, 3, 3);
                let g = random_poly(rng, &ctx, 3, 3);
                let ok = (|| Ok(star_wick_oracle(&f, &g, &sc)? == star_poly(&f, &g, &sc)?))();
                t.record(ok, || format!("f = {f}, g = {g}"));
            }
            t
        }
        "round-trip" => {
            let mut t = Tally::new("round-trip");
            for _ in 0..pairs {
                let ctx = names(rng.gen_range(1..=4));
                let f = random_poly(rng, &ctx, 4, 5);
                let ok = parse_expr(&f.to_string(), &ctx).map(|g| g == f);
                t.record(ok, || f.to_string());
            }
            t
        }
        "conic" => {
            let mut t = Tally::new("conic");
            let catalan = [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
            let genus_one = [2, 10, 44, 186, 772, 3172, 12952, 52666];
            let ok = (|| {
                let sol = wkb_solve(&conic_curve()?, 1, 11)?;
                let u0 = sol.u()[0].univariate_coeffs()?;
                let u1 = sol.u()[1].univariate_coeffs()?;
                let res_ok = sol.residual()?.iter().take(2).all(XSeries::is_zero);
                Ok(catalan
                    .iter()
                    .enumerate()
                    .all(|(n, &c)| u0.get(n + 2) == Some(&rat(c, 1)))
                    && genus_one
                        .iter()
                        .enumerate()
                        .all(|(n, &c)| u1.get(n + 1) == Some(&rat(c, 1)))
                    && res_ok)
            })();
            t.record(ok, || "conic u₀, u₁".into());
            t
        }
        "lambda" => {
            let mut t = Tally::new("lambda");
            let ok = (|| {
                let curve = CurveIdeal::new(conic_curve()?.h().clone(), vec![])?;
                let sc = plane_star(order.max(2))?;
                let mut good = true;
                for (s0, s1) in [(1, 0), (0, 1), (2, -3)] {
                    let lam = lambda_solve(rat(s0, 1), rat(s1, 1), 9)?;
                    good &= lam.satisfies_recurrence();
                    good &= lambda_residual(&curve, &lam, &sc)?.is_zero();
                    let bad = lam.with_coefficient(3, &lam.coefficients()[3] + rat(1, 1));
                    good &= !lambda_residual(&curve, &bad, &sc)?.is_zero();
                }
                Ok(good)
            })();
            t.record(ok, || "λ seeds".into());
            t
        }
        "reduction" => {
            let mut t = Tally::new("reduction");
            for _ in 0..pairs.max(20) {
                let ex = Ks4d::random_transversal(rng);
                let ok = (|| {
                    let r = reduce_wavefunction(&ex.coisotropic()?, &ex.lagrangian()?)?;
                    Ok(r.agree && r.coefficient()? == ex.closed_form())
                })();
                t.record(ok, || format_params(&ex));
            }
            t
        }
        "transversality" => {
            let mut t = Tally::new("transversality");
            for k in 0..pairs.max(20) {
                let ex = if k % 2 == 0 {
                    Ks4d::random_transversal(rng)
                } else {
                    Ks4d::random_degenerate(rng)
                };
                let ok = (|| {
                    let g = ex.coisotropic()?;
                    let tr = transversality(&g, &ex.lagrangian()?, &extend_coisotropic(&g)?)?;
                    let locus = ex.degeneracy().is_zero();
                    Ok(tr.det_vanishes() == locus && tr.elimination_deficient == locus)
                })();
                t.record(ok, || format_params(&ex));
            }
            t
        }
        "coisotropy" => {
            let mut t = Tally::new("coisotropy");
            let ctx = Context::new(["x", "y"]);
            let gens: Vec<Poly> = vec![
                Poly::var(&ctx, 0).expect("x"),
                Poly::var(&ctx, 1).expect("y"),
            ];
            t.record(
                is_coisotropic(&gens, &BiVector::plane()).map(|c| !c),
                || "⟨x, y⟩".into(),
            );
            let ex = Ks4d::symbolic();
            let ok = (|| {
                let b = ex.space.bivector();
                let g = ex.coisotropic()?;
                Ok(is_coisotropic(g.equations(), &b)?
                    && is_coisotropic(&ex.lagrangian()?.generators(), &b)?)
            })();
            t.record(ok, || "four-dimensional generators".into());
            let ok = (|| {
                let s = &ex.space;
                let v = |n: &str| parse_expr(n, s.context());
                // y1 + x2 and y2 + 2 x1 pair B = 1 with C = 2
                let gens = [&v("y1")? + &v("x2")?, &v("y2")? + &v("2*x1")?];
                Ok(!is_coisotropic(&gens, &s.bivector())?)
            })();
            t.record(ok, || "asymmetric Lagrangian generators".into());
            t
        }
        _ => return None,
    };
    Some(result.finish())
}

fn format_params(ex: &Ks4d) -> String {
    crate::reduction::KS4D_PARAMS
        .iter()
        .zip(&ex.params)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// `φ(f ⋆ g) = φ(f) φ(g)` in the plane.
pub fn phi_homomorphism(f: &Poly, g: &Poly, pol: &Polarization) -> Result<bool> {
    let order = (f.degree().unwrap_or(0) + g.degree().unwrap_or(0)) as usize + 1;
    let sc = StarContext::new(BiVector::plane(), order)?;
    let lhs = phi_series(&star_poly(f, g, &sc)?, pol)?;
    let rhs = phi(f, pol, order)?.mul(&phi(g, pol, order)?)?;
    Ok(lhs == rhs)
}

/// `−y + x² + 2xy + y²` with the shift `j = 1`.
pub fn conic_curve() -> Result<CurveIdeal> {
    let ctx = Context::new(["x", "y"]);
    CurveIdeal::new(parse_expr("-y + x^2 + 2*x*y + y^2", &ctx)?, vec![rat(1, 1)])
}
