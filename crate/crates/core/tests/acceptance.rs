// Acceptance criteria, one PASS/FAIL line each. Oracles here are computed
// independently of the library code paths they check.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use dquant::algebra::{rat, Coeff, Matrix, Monomial, RatFunc};
use dquant::cli::parse_expr;
use dquant::poisson::{is_coisotropic, BiVector, GaugePart, TensorSum};
use dquant::reduction::{extend_coisotropic, reduce_wavefunction, transversality, Ks4d};
use dquant::star::{
    braid, commutator, gauge_map, star, star_poly, star_wick_oracle, yang_baxter_residual,
    StarContext,
};
use dquant::weyl::{phi, phi_series, Polarization};
use dquant::wkb::{lambda_residual, lambda_solve, plane_star, wkb_solve, CurveIdeal};
use dquant::{Context, HSeries, Poly, Rational};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn plane() -> Arc<Context> {
    Context::new(["x", "y"])
}

fn p(ctx: &Arc<Context>, s: &str) -> Poly {
    parse_expr(s, ctx).unwrap()
}

fn small<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn names(n: usize) -> Arc<Context> {
    Context::new((1..=n).map(|i| format!("q{i}")))
}

fn random_poly<R: Rng>(rng: &mut R, ctx: &Arc<Context>, degree: u32, terms: usize) -> Poly {
    let n = ctx.len();
    let mut out = Poly::zero(ctx);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=degree) {
            e[rng.gen_range(0..n)] += 1;
        }
        out = &out + &Poly::monomial(ctx, Monomial::from_exponents(&e), small(rng));
    }
    out
}

fn random_skew<R: Rng>(rng: &mut R, n: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small(rng);
            m.set(j, i, -&v);
            m.set(i, j, v);
        }
    }
    m
}

/// `Σ π^{ij} ∂_i f ∂_j g` straight from the definition.
fn bracket_oracle(f: &Poly, g: &Poly, pi: &Matrix<Rational>) -> Poly {
    let mut out = Poly::zero(f.context());
    for i in 0..pi.rows() {
        for j in 0..pi.cols() {
            if !pi.get(i, j).is_zero() {
                out = &out + &(&f.diff(i).unwrap() * &g.diff(j).unwrap()).scale(pi.get(i, j));
            }
        }
    }
    out
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * k)
}

fn series(ctx: &Arc<Context>, coeffs: Vec<Poly>, order: usize) -> HSeries {
    HSeries::from_coeffs(ctx, coeffs, order).unwrap()
}

fn c01_star_anchors() -> Outcome {
    let ctx = plane();
    let sc = plane_star(4).unwrap();
    let half = Poly::constant(&ctx, rat(1, 2));
    let xy = p(&ctx, "x*y");
    let cases = [
        ("x", "y", vec![xy.clone(), -&half]),
        ("y", "x", vec![xy, half.clone()]),
        ("x", "x", vec![p(&ctx, "x^2")]),
        ("y", "y", vec![p(&ctx, "y^2")]),
    ];
    for (f, g, want) in cases {
        let got = star_poly(&p(&ctx, f), &p(&ctx, g), &sc).unwrap();
        ensure!(got == series(&ctx, want, 4), "{f} ⋆ {g} = {got}");
    }
    Ok(())
}

fn c02_bracket_recovery() -> Outcome {
    let ctx = plane();
    let sc = plane_star(3).unwrap();
    let c = commutator(
        &HSeries::from_poly(p(&ctx, "y"), 3),
        &HSeries::from_poly(p(&ctx, "x"), 3),
        &sc,
    )
    .unwrap();
    let scaled = c.div_hbar().ok_or("commutator not divisible by ħ")?;
    ensure!(
        scaled == series(&ctx, vec![Poly::one(&ctx)], 2),
        "(y⋆x − x⋆y)/ħ = {scaled}"
    );
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let ctx = names(n);
        let pi = random_skew(&mut rng, n);
        let sc = StarContext::new(BiVector::new(pi.clone()).unwrap(), 2).unwrap();
        let f = random_poly(&mut rng, &ctx, 3, 4);
        let g = random_poly(&mut rng, &ctx, 3, 4);
        let c = commutator(
            &HSeries::from_poly(f.clone(), 2),
            &HSeries::from_poly(g.clone(), 2),
            &sc,
        )
        .unwrap();
        let lead = c
            .div_hbar()
            .ok_or("commutator not divisible by ħ")?
            .coeff(0);
        ensure!(lead == bracket_oracle(&f, &g, &pi), "f = {f}, g = {g}");
    }
    Ok(())
}

fn c03_associativity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let ctx = names(n);
        let sc = StarContext::new(BiVector::new(random_skew(&mut rng, n)).unwrap(), 4).unwrap();
        let [f, g, h] = [0; 3].map(|_| HSeries::from_poly(random_poly(&mut rng, &ctx, 3, 3), 4));
        let l = star(&star(&f, &g, &sc).unwrap(), &h, &sc).unwrap();
        let r = star(&f, &star(&g, &h, &sc).unwrap(), &sc).unwrap();
        ensure!(
            l == r,
            "triple {} / {} / {}",
            f.coeff(0),
            g.coeff(0),
            h.coeff(0)
        );
    }
    Ok(())
}

fn c04_gauge() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let ctx = names(n);
        let pi = BiVector::new(random_skew(&mut rng, n)).unwrap();
        let mut gm = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = small(&mut rng);
                gm.set(i, j, v.clone());
                gm.set(j, i, v);
            }
        }
        let gamma = GaugePart::new(gm).unwrap();
        let plain = StarContext::new(pi.clone(), 4).unwrap();
        let gauged = StarContext::new(pi, 4)
            .unwrap()
            .with_gauge(gamma.clone())
            .unwrap();
        let f = HSeries::from_poly(random_poly(&mut rng, &ctx, 3, 3), 4);
        let g = HSeries::from_poly(random_poly(&mut rng, &ctx, 3, 3), 4);
        let lhs = gauge_map(&star(&f, &g, &plain).unwrap(), &gamma, 4).unwrap();
        let rhs = star(
            &gauge_map(&f, &gamma, 4).unwrap(),
            &gauge_map(&g, &gamma, 4).unwrap(),
            &gauged,
        )
        .unwrap();
        ensure!(lhs == rhs, "f = {}, g = {}", f.coeff(0), g.coeff(0));
    }
    Ok(())
}

fn c05_yang_baxter() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let ctx = names(n);
        let sc =
            braid(&StarContext::new(BiVector::new(random_skew(&mut rng, n)).unwrap(), 1).unwrap());
        let parts = [0; 3].map(|_| {
            let mut e = vec![0u32; n];
            for _ in 0..rng.gen_range(1..=3) {
                e[rng.gen_range(0..n)] += 1;
            }
            Poly::monomial(&ctx, Monomial::from_exponents(&e), rat(1, 1))
        });
        let t = TensorSum::pure(&parts).unwrap();
        ensure!(
            yang_baxter_residual(&t, &sc).unwrap().is_zero(),
            "{} ⊗ {} ⊗ {}",
            parts[0],
            parts[1],
            parts[2]
        );
    }
    Ok(())
}

fn phi_check(f: &Poly, g: &Poly, pol: &Polarization) -> bool {
    let order = (f.degree().unwrap_or(0) + g.degree().unwrap_or(0)) as usize + 1;
    let sc = StarContext::new(BiVector::plane(), order).unwrap();
    let lhs = phi_series(&star_poly(f, g, &sc).unwrap(), pol).unwrap();
    lhs == phi(f, pol, order)
        .unwrap()
        .mul(&phi(g, pol, order).unwrap())
        .unwrap()
}

fn c06_phi() -> Outcome {
    let ctx = plane();
    let pol = Polarization::plane(&ctx).unwrap();
    let monos: Vec<Poly> = (0..=4u32)
        .flat_map(|d| (0..=d).map(move |a| [a, d - a]))
        .map(|e| Poly::monomial(&ctx, Monomial::from_exponents(&e), rat(1, 1)))
        .collect();
    for f in &monos {
        for g in &monos {
            ensure!(phi_check(f, g, &pol), "monomials {f}, {g}");
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..50 {
        let f = random_poly(&mut rng, &ctx, 4, 4);
        let g = random_poly(&mut rng, &ctx, 4, 4);
        ensure!(phi_check(&f, &g, &pol), "f = {f}, g = {g}");
    }
    Ok(())
}

fn c07_catalan() -> Outcome {
    let ctx = plane();
    let curve = CurveIdeal::new(p(&ctx, "-y + x^2 + 2*x*y + y^2"), vec![rat(1, 1)]).unwrap();
    let u0 = wkb_solve(&curve, 0, 11).unwrap().u()[0]
        .univariate_coeffs()
        .unwrap();
    for n in 1..=10u64 {
        let closed = factorial(2 * n) / (factorial(n + 1) * factorial(n));
        // C_n multiplies x^{n+1}
        let got = u0.get(n as usize + 1).cloned().unwrap_or_default();
        ensure!(
            got == Rational::from_integer(closed.clone()),
            "n = {n}: {got} ≠ {closed}"
        );
    }
    Ok(())
}

fn c08_genus_one() -> Outcome {
    let ctx = plane();
    let curve = CurveIdeal::new(p(&ctx, "-y + x^2 + 2*x*y + y^2"), vec![rat(1, 1)]).unwrap();
    let u1 = wkb_solve(&curve, 1, 8).unwrap().u()[1]
        .univariate_coeffs()
        .unwrap();
    for n in 1..=8u64 {
        let closed =
            BigInt::from(4).pow(n as u32) - factorial(2 * n) / (factorial(n) * factorial(n));
        let got = u1.get(n as usize).cloned().unwrap_or_default();
        ensure!(
            got == Rational::from_integer(closed.clone()),
            "n = {n}: {got} ≠ {closed}"
        );
    }
    Ok(())
}

fn c09_lambda() -> Outcome {
    let ctx = plane();
    let curve = CurveIdeal::new(p(&ctx, "-y + x^2 + 2*x*y + y^2"), vec![]).unwrap();
    let sc = plane_star(4).unwrap();
    for (s0, s1) in [(1, 0), (0, 1), (3, -2)] {
        let lam = lambda_solve(rat(s0, 1), rat(s1, 1), 9).unwrap();
        let c = lam.coefficients();
        ensure!(c[2].is_zero(), "λ_2 = {}", c[2]);
        for n in 1..=7usize {
            let lhs = &c[n + 2] * Rational::from_integer(((n + 1) * (n + 2)).into()) + &c[n - 1];
            ensure!(lhs.is_zero(), "recurrence fails at n = {n}");
        }
        ensure!(
            lambda_residual(&curve, &lam, &sc).unwrap().is_zero(),
            "residual for seeds ({s0}, {s1})"
        );
        for k in [0, 3, 6] {
            let bad = lam.with_coefficient(k, &c[k] + rat(1, 7));
            ensure!(
                !lambda_residual(&curve, &bad, &sc).unwrap().is_zero(),
                "mutating λ_{k} undetected"
            );
        }
    }
    Ok(())
}

/// `X` in `exp(X z₁²/2ℏ)` by hand: eliminate `y1, y2, x2` from `G`, `L` and
/// `z1 = a x1 + c y1`, then `w1 = x1/c − x2/d`.
fn closed_x(v: &[Rational; 7]) -> Rational {
    let [a, b, c, d, aa, bb, dd] = v.clone();
    let num = -(&aa * &c * &c) - rat(2, 1) * &bb * &c * &d - &dd * &d * &d + &a * &c + &b * &d;
    let den = &c
        * &d
        * (&aa * &dd * &c * &d - &aa * &b * &c - &bb * &bb * &c * &d - &dd * &a * &d + &a * &b);
    num / den
}

fn locus(v: &[Rational; 7]) -> bool {
    let [a, b, c, d, aa, bb, dd] = v.clone();
    &bb * &bb * &c * &d == (&a - &c * &aa) * (&b - &d * &dd)
}

fn tuple<R: Rng>(rng: &mut R) -> [Rational; 7] {
    std::array::from_fn(|i| loop {
        let r = small(rng);
        if !((i == 2 || i == 3) && r.is_zero()) {
            break r;
        }
    })
}

fn c10_reduction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut done = 0;
    while done < 20 {
        let v = tuple(&mut rng);
        if locus(&v) {
            continue;
        }
        let ex = Ks4d::numeric(v.clone());
        let r = reduce_wavefunction(&ex.coisotropic().unwrap(), &ex.lagrangian().unwrap())
            .map_err(|e| e.to_string())?;
        let g = r.gaussian.z_coefficient().unwrap();
        let e = r.eliminated.z_coefficient().unwrap();
        ensure!(g == e, "routes differ at {v:?}: {g} vs {e}");
        ensure!(
            e == RatFunc::constant(closed_x(&v)),
            "hand elimination differs at {v:?}"
        );
        done += 1;
    }
    let sym = Ks4d::symbolic();
    let r = reduce_wavefunction(&sym.coisotropic().unwrap(), &sym.lagrangian().unwrap()).unwrap();
    ensure!(
        r.gaussian.z_coefficient().unwrap() == r.eliminated.z_coefficient().unwrap(),
        "symbolic routes differ"
    );
    let one = rat(1, 1);
    let zero = rat(0, 1);
    let unit = Ks4d::numeric([
        one.clone(),
        one.clone(),
        one.clone(),
        one,
        zero.clone(),
        zero.clone(),
        zero,
    ]);
    let r = reduce_wavefunction(&unit.coisotropic().unwrap(), &unit.lagrangian().unwrap()).unwrap();
    // exp(z₁²/ℏ) is exp(X z₁²/2ℏ) with X = 2
    ensure!(
        r.eliminated.z_coefficient().unwrap() == RatFunc::constant(rat(2, 1)),
        "unit point: {}",
        r.eliminated
    );
    ensure!(
        r.gaussian.z_coefficient().unwrap() == RatFunc::constant(rat(2, 1)),
        "unit point: {}",
        r.gaussian
    );
    Ok(())
}

fn c11_trichotomy() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let mut on = 0;
    let mut off = 0;
    while on < 12 || off < 12 {
        let mut v = tuple(&mut rng);
        if on <= off {
            // solve B²cd = (a − cA)(b − dD) for D
            let [a, b, c, d, aa, bb, _] = v.clone();
            let pa = &a - &c * &aa;
            if pa.is_zero() {
                continue;
            }
            v[6] = (&b - &bb * &bb * &c * &d / &pa) / &d;
        }
        let degenerate = locus(&v);
        let ex = Ks4d::numeric(v.clone());
        let g = ex.coisotropic().unwrap();
        let t = transversality(
            &g,
            &ex.lagrangian().unwrap(),
            &extend_coisotropic(&g).unwrap(),
        )
        .unwrap();
        ensure!(
            t.det_vanishes() == degenerate,
            "det(K+Q) disagrees at {v:?}"
        );
        ensure!(
            t.elimination_deficient == degenerate,
            "elimination rank disagrees at {v:?}"
        );
        if degenerate {
            on += 1;
        } else {
            off += 1;
        }
    }
    Ok(())
}

fn c12_coisotropy() -> Outcome {
    let ctx = plane();
    let gens = vec![p(&ctx, "x"), p(&ctx, "y")];
    ensure!(
        !is_coisotropic(&gens, &BiVector::plane()).unwrap(),
        "⟨x, y⟩ accepted"
    );
    let ex = Ks4d::symbolic();
    let b = ex.space.bivector();
    let g = ex.coisotropic().unwrap();
    ensure!(is_coisotropic(g.equations(), &b).unwrap(), "G rejected");
    let l = ex.lagrangian().unwrap();
    ensure!(is_coisotropic(&l.generators(), &b).unwrap(), "L rejected");
    Ok(())
}

fn c13_wick() -> Outcome {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let ctx = names(n);
        let sc = StarContext::new(BiVector::new(random_skew(&mut rng, n)).unwrap(), 3).unwrap();
        let f = random_poly(&mut rng, &ctx, 3, 3);
        let g = random_poly(&mut rng, &ctx, 3, 3);
        ensure!(
            star_wick_oracle(&f, &g, &sc).unwrap() == star_poly(&f, &g, &sc).unwrap(),
            "f = {f}, g = {g}"
        );
    }
    Ok(())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dquant"))
        .arg("--json")
        .args(args)
        .env_remove("DQUANT_CAPS")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.code() == Some(0),
        "{args:?} exited with {:?}",
        out.status.code()
    );
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn exact(v: &Value) -> String {
    let (n, d) = (
        v["numerator"].as_str().unwrap_or("?"),
        v["denominator"].as_str().unwrap_or("?"),
    );
    if d == "1" {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Coefficients of a univariate term list, by degree.
fn dense(terms: &Value, len: usize) -> Vec<String> {
    let mut out = vec!["0".to_string(); len];
    for t in terms.as_array().into_iter().flatten() {
        let k = t["exponents"][0].as_u64().unwrap() as usize;
        if k < len {
            out[k] = exact(t);
        }
    }
    out
}

fn c14_cli() -> Outcome {
    let star = cli_json(&["star", "--preset", "conic"])?;
    let xy = &star["products"][0]["coefficients"];
    ensure!(
        exact(&xy[1][0]) == "-1/2" && xy[1][0]["exponents"] == serde_json::json!([0, 0]),
        "x ⋆ y: {xy}"
    );
    let yx = &star["products"][1]["coefficients"];
    ensure!(exact(&yx[1][0]) == "1/2", "y ⋆ x: {yx}");

    let wkb = cli_json(&["wkb", "--preset", "conic", "--degree", "11"])?;
    let u0 = dense(&wkb["u"][0], 12);
    let catalan = [
        "1", "2", "5", "14", "42", "132", "429", "1430", "4862", "16796",
    ];
    ensure!(u0[2..] == catalan, "u0 = {u0:?}");
    let u1 = dense(&wkb["u"][1], 9);
    ensure!(
        u1[1..] == ["2", "10", "44", "186", "772", "3172", "12952", "52666"],
        "u1 = {u1:?}"
    );

    let lam = cli_json(&["lambda", "--preset", "conic"])?;
    ensure!(
        lam["residual_vanishes"] == true && lam["recurrence_holds"] == true,
        "λ: {lam}"
    );
    ensure!(
        exact(&lam["lambda"][3]) == "-1/6" && exact(&lam["lambda"][6]) == "1/180",
        "λ values"
    );

    let red = cli_json(&[
        "reduce",
        "--preset",
        "ks4d",
        "--params",
        "a=1,b=1,c=1,d=1,A=0,B=0,D=0",
    ])?;
    ensure!(red["verdict"] == "AGREE", "verdict {}", red["verdict"]);
    ensure!(
        exact(&red["coefficient_exact"]) == "2",
        "coefficient {}",
        red["coefficient_exact"]
    );
    ensure!(
        red["elimination_route"] == "const*exp((1/ħ)*(z1^2))",
        "{}",
        red["elimination_route"]
    );

    let round = cli_json(&["star", "--order", "1", "-y + x^2 + 2*x*y + y^2", "1"])?;
    let shown = round["products"][0]["left"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    let ctx = plane();
    ensure!(
        p(&ctx, &shown) == p(&ctx, "-y + x^2 + 2*x*y + y^2"),
        "round trip of `{shown}`"
    );
    Ok(())
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("star anchors", c01_star_anchors),
        ("bracket recovery", c02_bracket_recovery),
        ("associativity", c03_associativity),
        ("gauge intertwining", c04_gauge),
        ("Yang-Baxter residual", c05_yang_baxter),
        ("phi homomorphism", c06_phi),
        ("conic branch (Catalan)", c07_catalan),
        ("genus-one series", c08_genus_one),
        ("lambda recurrence and residual", c09_lambda),
        ("4D reduction route equivalence", c10_reduction),
        ("transversality trichotomy", c11_trichotomy),
        ("coisotropy checker", c12_coisotropy),
        ("Wick oracle equivalence", c13_wick),
        ("CLI presets and round trip", c14_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
