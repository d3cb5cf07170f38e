//! Command-line front end: `star`, `wkb`, `lambda`, `reduce` and `check`.
//!
//! Exit status is 0 when every requested computation and check passes, 1 on
//! a verification failure and 2 on usage or parse errors. Default caps come
//! from `DQUANT_CAPS` (e.g. `order=6,degree=12,hpower=9`) when set.

pub mod check;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{rat, Coeff, Context, HSeries, Matrix, Monomial, Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::poisson::{BiVector, GaugePart};
use crate::reduction::{
    extend_coisotropic, reduce_wavefunction, transversality, CoisotropicSubspace, Ks4d,
    LinearLagrangian, PhaseSpace, KS4D_PARAMS,
};
use crate::star::{star_poly, StarContext};
use crate::wkb::{lambda_residual, lambda_solve, wkb_solve, CurveIdeal, LambdaSeries};
use output::{
    graded, series_terms, CheckOutput, Envelope, ErrorOutput, Exact, LambdaOutput, Param, Payload,
    ReduceOutput, StarOutput, StarProduct, WkbOutput, SCHEMA_VERSION,
};
pub use parse::parse_expr;

pub const CAPS_ENV: &str = "DQUANT_CAPS";
pub const CONIC: &str = "-y + x^2 + 2*x*y + y^2";

/// Truncation caps: `ℏ`-order, `x`-degree and `H`-power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub order: usize,
    pub degree: usize,
    pub hpower: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 6,
            degree: 12,
            hpower: 9,
        }
    }
}

impl Caps {
    /// Parse `key=value` pairs over the defaults.
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("cap `{part}` is not key=value")))?;
            let v: usize = value
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("cap `{part}` needs a positive integer"))
                })?;
            match key.trim() {
                "order" => caps.order = v,
                "degree" => caps.degree = v,
                "hpower" => caps.hpower = v,
                other => return Err(Error::InvalidArgument(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dquant",
    version,
    about = "Exact deformation quantisation toolkit"
)]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moyal star product of two polynomials, by ℏ-order.
    Star(StarArgs),
    /// WKB expansion u_g, S_g of a plane curve.
    Wkb(WkbArgs),
    /// λ-series solving H ⋆ λ(H) = 0.
    Lambda(LambdaArgs),
    /// Reduce a Lagrangian wavefunction along a linear coisotropic subspace.
    Reduce(ReduceArgs),
    /// Run the invariant suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct StarArgs {
    /// `std2`, `std2n` (pairs {y_i, x_i} = 1) or rows `0,-1;1,0`.
    #[arg(long, default_value = "std2")]
    pub pi: String,
    /// Comma-separated variable names; defaults follow `--pi`.
    #[arg(long)]
    pub vars: Option<String>,
    /// Symmetric gauge part, rows separated by `;`.
    #[arg(long)]
    pub gauge: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    /// `conic` prints the four plane anchors instead of `LEFT ⋆ RIGHT`.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(allow_hyphen_values = true)]
    pub left: Option<String>,
    #[arg(allow_hyphen_values = true)]
    pub right: Option<String>,
}

#[derive(Debug, Args)]
pub struct WkbArgs {
    #[arg(long, conflicts_with = "curve")]
    pub preset: Option<String>,
    /// Curve H(x, y) with H(0, 0) = 0.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Quantum shifts j_1, j_2, … of φ(H) − Σ ℏ^g j_g.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub j: Vec<String>,
    #[arg(long)]
    pub orders: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[arg(long, conflicts_with = "curve")]
    pub preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// λ_0, λ_1.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1,0",
        allow_hyphen_values = true
    )]
    pub seeds: Vec<String>,
    #[arg(long)]
    pub hpower: Option<usize>,
    /// Replace one coefficient, `n=value`, before checking.
    #[arg(long)]
    pub mutate: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub preset: Option<String>,
    /// `name=value` assignments; unassigned parameters stay symbolic.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// Draw a `transversal` or `degenerate` tuple with `--seed`.
    #[arg(long)]
    pub random: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',')]
    pub positions: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub momenta: Vec<String>,
    /// Symbolic parameter names for `--coisotropic` and `--lagrangian`.
    #[arg(long = "symbols", value_delimiter = ',')]
    pub symbols: Vec<String>,
    /// Linear equations of G separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub coisotropic: Option<String>,
    /// Linear equations of L separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub lagrangian: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Suites to run; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random cases per suite.
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long)]
    pub order: Option<usize>,
}

/// Parse arguments, run, and return the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let json = cli.json;
    let result = Caps::from_env().and_then(|caps| dispatch(cli.command, caps));
    match result {
        Ok(outcome) => {
            let status = if outcome.pass { "pass" } else { "fail" };
            let _ = if json {
                let env = Envelope {
                    schema_version: SCHEMA_VERSION,
                    status,
                    payload: outcome.payload,
                };
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&env).expect("serialisable")
                )
            } else {
                write!(out, "{}", outcome.text)
            };
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let offset = match &e {
                Error::Syntax { offset, .. } | Error::UndeclaredIdentifier { offset, .. } => {
                    Some(*offset)
                }
                _ => None,
            };
            if json {
                let body = ErrorOutput {
                    schema_version: SCHEMA_VERSION,
                    status: "error",
                    error: e.to_string(),
                    offset,
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&body).expect("serialisable")
                );
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Outcome {
    pass: bool,
    text: String,
    payload: Payload,
}

fn dispatch(cmd: Command, caps: Caps) -> Result<Outcome> {
    match cmd {
        Command::Star(a) => run_star(a, caps),
        Command::Wkb(a) => run_wkb(a, caps),
        Command::Lambda(a) => run_lambda(a, caps),
        Command::Reduce(a) => run_reduce(a),
        Command::Check(a) => run_check(a, caps),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let ctx = Context::new(Vec::<String>::new());
    let p = parse_expr(s, &ctx)?;
    Ok(p.constant_term())
}

fn parse_rows(s: &str) -> Result<Matrix<Rational>> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|e| parse_rational(e.trim()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn star_setup(a: &StarArgs) -> Result<(Arc<Context>, BiVector)> {
    let declared: Option<Vec<String>> = a
        .vars
        .as_ref()
        .map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
    let (default, b) = match a.pi.strip_prefix("std") {
        Some(k) if k.parse::<usize>().is_ok_and(|k| k >= 2 && k % 2 == 0) => {
            let dim: usize = k.parse().expect("checked");
            let n = dim / 2;
            let names: Vec<String> = if n == 1 {
                vec!["x".into(), "y".into()]
            } else {
                (1..=n)
                    .map(|i| format!("x{i}"))
                    .chain((1..=n).map(|i| format!("y{i}")))
                    .collect()
            };
            let pairs: Vec<(usize, usize)> = (0..n).map(|i| (n + i, i)).collect();
            (Some(names), BiVector::darboux(dim, &pairs)?)
        }
        _ => (None, BiVector::new(parse_rows(&a.pi)?)?),
    };
    let names = declared.or(default).ok_or_else(|| {
        Error::InvalidArgument("`--vars` is required with an explicit matrix".into())
    })?;
    if names.len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: names.len(),
        });
    }
    Ok((Context::new(names), b))
}

fn run_star(a: StarArgs, caps: Caps) -> Result<Outcome> {
    let order = a.order.unwrap_or(caps.order);
    let (ctx, b) = star_setup(&a)?;
    let mut sc = StarContext::new(b, order)?;
    if let Some(g) = &a.gauge {
        sc = sc.with_gauge(GaugePart::new(parse_rows(g)?)?)?;
    }
    let pairs: Vec<(String, String)> = match (a.preset.as_deref(), &a.left, &a.right) {
        (Some("conic"), None, None) => [("x", "y"), ("y", "x"), ("x", "x"), ("y", "y")]
            .iter()
            .map(|(l, r)| (l.to_string(), r.to_string()))
            .collect(),
        (Some(p), _, _) => {
            return Err(Error::InvalidArgument(format!(
                "unknown or misused preset `{p}`"
            )))
        }
        (None, Some(l), Some(r)) => vec![(l.clone(), r.clone())],
        _ => return Err(Error::InvalidArgument("star needs LEFT and RIGHT".into())),
    };
    let mut text = String::new();
    let mut products = Vec::new();
    for (l, r) in pairs {
        let f = parse_expr(&l, &ctx)?;
        let g = parse_expr(&r, &ctx)?;
        let s = star_poly(&f, &g, &sc)?;
        text.push_str(&format!("({f}) ⋆ ({g})\n"));
        text.push_str(&hseries_table(&s));
        products.push(StarProduct {
            variables: ctx.names().to_vec(),
            order,
            left: f.to_string(),
            right: g.to_string(),
            coefficients: graded(&s),
            display: s.coeffs().iter().map(ToString::to_string).collect(),
        });
    }
    Ok(Outcome {
        pass: true,
        text,
        payload: Payload::Star(StarOutput { products }),
    })
}

fn hseries_table(s: &HSeries) -> String {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("  ħ^{k}: {p}\n"))
        .collect()
}

fn plane_curve(text: &str) -> Result<Poly> {
    parse_expr(text, &Context::new(["x", "y"]))
}

fn curve_arg(preset: Option<&str>, curve: Option<&str>) -> Result<(Poly, bool)> {
    match (preset, curve) {
        (Some("conic"), None) => Ok((plane_curve(CONIC)?, true)),
        (Some(p), _) => Err(Error::InvalidArgument(format!("unknown preset `{p}`"))),
        (None, Some(c)) => Ok((plane_curve(c)?, false)),
        (None, None) => Err(Error::InvalidArgument(
            "give `--curve` or `--preset`".into(),
        )),
    }
}

fn run_wkb(a: WkbArgs, caps: Caps) -> Result<Outcome> {
    let (h, preset) = curve_arg(a.preset.as_deref(), a.curve.as_deref())?;
    let mut j =
        a.j.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
    if preset && j.is_empty() {
        j.push(rat(1, 1));
    }
    let orders = a
        .orders
        .unwrap_or(if preset { 1 } else { caps.order.min(2) });
    let degree = a.degree.unwrap_or(caps.degree);
    let curve = CurveIdeal::new(h.clone(), j.clone())?;
    let sol = wkb_solve(&curve, orders, degree)?;
    let residual_vanishes = sol.residual()?.iter().take(orders + 1).all(|r| r.is_zero());
    let mut text = format!(
        "curve: {h}\nj: {}\n",
        if j.is_empty() { "0".into() } else { join(&j) }
    );
    for (g, u) in sol.u().iter().enumerate() {
        text.push_str(&format!("u_{g}: {}\n", join(&u.univariate_coeffs()?)));
    }
    for (g, s) in sol.s().iter().enumerate() {
        text.push_str(&format!("S_{g}: {}\n", s.to_poly()));
    }
    text.push_str(&format!(
        "residual: {}\n",
        if residual_vanishes { "0" } else { "NONZERO" }
    ));
    let payload = Payload::Wkb(WkbOutput {
        curve: h.to_string(),
        j: j.iter().map(Exact::from).collect(),
        degree,
        u: sol.u().iter().map(series_terms).collect(),
        s: sol.s().iter().map(series_terms).collect(),
        residual_vanishes,
    });
    Ok(Outcome {
        pass: residual_vanishes,
        text,
        payload,
    })
}

fn join(r: &[Rational]) -> String {
    r.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn run_lambda(a: LambdaArgs, caps: Caps) -> Result<Outcome> {
    let (h, _) = curve_arg(a.preset.as_deref(), a.curve.as_deref())?;
    if a.seeds.len() != 2 {
        return Err(Error::InvalidArgument("`--seeds` takes λ_0,λ_1".into()));
    }
    let hpower = a.hpower.unwrap_or(caps.hpower);
    let mut lam = lambda_solve(
        parse_rational(&a.seeds[0])?,
        parse_rational(&a.seeds[1])?,
        hpower,
    )?;
    if let Some(m) = &a.mutate {
        let (n, v) = m
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument("`--mutate` takes n=value".into()))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad index `{n}`")))?;
        if n >= lam.len() {
            return Err(Error::InvalidArgument(format!(
                "index {n} beyond λ_{}",
                lam.len() - 1
            )));
        }
        lam = LambdaSeries::from_coefficients({
            let mut c = lam.coefficients().to_vec();
            c[n] = parse_rational(v)?;
            c
        });
    }
    let curve = CurveIdeal::new(h.clone(), vec![])?;
    let sc = StarContext::new(BiVector::plane(), 2)?;
    let c = crate::wkb::airy_constant(&h, sc.bivector())?;
    let residual = lambda_residual(&curve, &lam, &sc)?;
    let recurrence_holds = lam.satisfies_recurrence();
    let mut text = format!("curve: {h}\nc: {c}\n");
    for (n, l) in lam.coefficients().iter().enumerate() {
        text.push_str(&format!("λ_{n}: {l}\n"));
    }
    text.push_str(&format!(
        "recurrence: {}\nresidual: {residual}\n",
        if recurrence_holds { "holds" } else { "FAILS" }
    ));
    let payload = Payload::Lambda(LambdaOutput {
        curve: h.to_string(),
        airy_constant: Exact::from(&c),
        lambda: lam.coefficients().iter().map(Exact::from).collect(),
        recurrence_holds,
        residual_vanishes: residual.is_zero(),
        residual: residual
            .terms()
            .map(|(k, p)| format!("({p})*ħ^{k}"))
            .collect(),
    });
    Ok(Outcome {
        pass: recurrence_holds && residual.is_zero(),
        text,
        payload,
    })
}

fn ks4d_from_args(a: &ReduceArgs) -> Result<Ks4d> {
    if let Some(kind) = &a.random {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(a.seed);
        return match kind.as_str() {
            "transversal" => Ok(Ks4d::random_transversal(&mut rng)),
            "degenerate" => Ok(Ks4d::random_degenerate(&mut rng)),
            other => Err(Error::InvalidArgument(format!(
                "unknown random kind `{other}`"
            ))),
        };
    }
    let sym = Ks4d::symbolic();
    let mut params = sym.params.clone();
    for assignment in &a.params {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("`{assignment}` is not name=value")))?;
        let i = KS4D_PARAMS
            .iter()
            .position(|p| *p == name.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter `{name}`")))?;
        params[i] = RatFunc::constant(parse_rational(value.trim())?);
    }
    Ok(Ks4d::with_params(params))
}

/// Parse `;`-separated linear forms over positions and momenta with symbolic
/// coefficients.
fn parse_linear(text: &str, space: &PhaseSpace, symbols: &[String]) -> Result<Vec<Poly<RatFunc>>> {
    let n = space.context().len();
    let all = Context::new(
        space
            .context()
            .names()
            .iter()
            .cloned()
            .chain(symbols.iter().cloned()),
    );
    let params = Context::new(symbols.iter().cloned());
    text.split(';')
        .map(|part| {
            let p = parse_expr(part, &all)?;
            let mut terms: Vec<(Monomial, RatFunc)> = Vec::new();
            for (m, c) in p.terms() {
                let dense = m.to_dense(all.len());
                let phase = Monomial::from_exponents(&dense[..n]);
                let coef =
                    Poly::monomial(&params, Monomial::from_exponents(&dense[n..]), c.clone());
                terms.push((phase, RatFunc::from_poly(coef)));
            }
            Ok(Poly::from_terms(space.context(), terms))
        })
        .collect()
}

fn run_reduce(a: ReduceArgs) -> Result<Outcome> {
    let (g, l, params) = match a.preset.as_deref() {
        Some("ks4d") => {
            let ex = ks4d_from_args(&a)?;
            let params = KS4D_PARAMS
                .iter()
                .zip(&ex.params)
                .map(|(n, v)| Param {
                    name: n.to_string(),
                    value: v.to_string(),
                })
                .collect();
            (ex.coisotropic()?, ex.lagrangian()?, params)
        }
        Some(p) => return Err(Error::InvalidArgument(format!("unknown preset `{p}`"))),
        None => {
            let pos: Vec<&str> = a.positions.iter().map(String::as_str).collect();
            let mom: Vec<&str> = a.momenta.iter().map(String::as_str).collect();
            let space = PhaseSpace::new(&pos, &mom)?;
            let need = |o: &Option<String>, what: &str| {
                o.clone().ok_or_else(|| {
                    Error::InvalidArgument(format!("`--{what}` is required without a preset"))
                })
            };
            let g = CoisotropicSubspace::new(
                &space,
                parse_linear(&need(&a.coisotropic, "coisotropic")?, &space, &a.symbols)?,
            )?;
            let l = LinearLagrangian::from_generators(
                &space,
                &parse_linear(&need(&a.lagrangian, "lagrangian")?, &space, &a.symbols)?,
            )?;
            (g, l, Vec::new())
        }
    };
    let ext = extend_coisotropic(&g)?;
    let mut out = ReduceOutput {
        params,
        chart: ext.chart().to_string(),
        zeta: ext.zeta().iter().map(ToString::to_string).collect(),
        xi: ext.xi().iter().map(ToString::to_string).collect(),
        psi_g: None,
        psi_l: None,
        gaussian_route: None,
        elimination_route: None,
        coefficient: None,
        coefficient_exact: None,
        det_kernel: None,
        verdict: String::new(),
    };
    let pass = match reduce_wavefunction(&g, &l) {
        Ok(r) => {
            out.psi_g = Some(r.psi_g.to_string());
            out.psi_l = Some(r.psi_l.to_string());
            out.gaussian_route = Some(r.gaussian.to_string());
            out.elimination_route = Some(r.eliminated.to_string());
            if let Ok(c) = r.coefficient() {
                out.coefficient_exact = c.as_rational().map(|q| Exact::from(&q));
                out.coefficient = Some(c.to_string());
            }
            out.verdict = if r.agree { "AGREE" } else { "DISAGREE" }.into();
            r.agree
        }
        Err(Error::NonTransversal(_)) => {
            out.verdict = "NONTRANSVERSAL".into();
            false
        }
        Err(e) => return Err(e),
    };
    if let Ok(t) = transversality(&g, &l, &ext) {
        out.det_kernel = Some(t.det_kernel.to_string());
    }
    let mut text = String::new();
    for p in &out.params {
        text.push_str(&format!("{} = {}\n", p.name, p.value));
    }
    text.push_str(&format!("chart: {}\n", out.chart));
    for (k, (z, x)) in out.zeta.iter().zip(&out.xi).enumerate() {
        text.push_str(&format!("ζ_{0} = {z}\nξ_{0} = {x}\n", k + 1));
    }
    let show = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
    text.push_str(&format!(
        "ψ_G: {}\nψ_L: {}\n",
        show(&out.psi_g),
        show(&out.psi_l)
    ));
    text.push_str(&format!("gaussian route: {}\n", show(&out.gaussian_route)));
    text.push_str(&format!(
        "elimination route: {}\n",
        show(&out.elimination_route)
    ));
    text.push_str(&format!("det(K + Q): {}\n", show(&out.det_kernel)));
    text.push_str(&format!("verdict: {}\n", out.verdict));
    Ok(Outcome {
        pass,
        text,
        payload: Payload::Reduce(out),
    })
}

fn run_check(a: CheckArgs, caps: Caps) -> Result<Outcome> {
    let names: Vec<String> = if a.suite.is_empty() {
        check::SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        a.suite.clone()
    };
    let budget = check::Budget {
        pairs: a.pairs,
        order: a.order.unwrap_or(caps.order.min(4)),
    };
    let mut suites = Vec::new();
    for n in &names {
        let r = check::run_suite(n, a.seed, budget).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown suite `{n}`; known: {}",
                check::SUITES.join(", ")
            ))
        })?;
        suites.push(r);
    }
    let pass = suites.iter().all(|s| s.failures == 0);
    let mut text = String::new();
    for s in &suites {
        let verdict = if s.failures == 0 { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{verdict} {:<16} {}/{} cases\n",
            s.name,
            s.cases - s.failures,
            s.cases
        ));
        if let Some(f) = &s.first_failure {
            text.push_str(&format!("     first failure: {f}\n"));
        }
    }
    Ok(Outcome {
        pass,
        text,
        payload: Payload::Check(CheckOutput {
            seed: a.seed,
            suites,
        }),
    })
}
