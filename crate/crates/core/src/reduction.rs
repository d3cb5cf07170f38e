//! Reduction of wavefunctions for linear Lagrangians and linear coisotropic
//! subspaces of a Darboux space with `{x_i, y_i} = 1`, `y_i ↦ ℏ∂_i`.
//!
//! Coefficients live in [`RatFunc`], so parameters stay symbolic; numeric
//! tuples are constant rational functions.
//!
//! Two routes compute the reduced wavefunction on `G/G^⊥`:
//!
//! * the Gaussian route multiplies `ψ_G` by the pairing kernel of `L` and
//!   integrates out the positions with [`central_identity`];
//! * the elimination route solves the linear equations of `G`, `L` and the
//!   extension for `w` in terms of `z` and quantises `w = C z`.
//!
//! The pairing kernel is the wavefunction of `L` reflected by `y ↦ −y`:
//! integrating `ℏ∂` by parts against `ψ_G` flips its sign.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::{rat, Coeff, Context, Matrix, Monomial, Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::poisson::{bracket, is_coisotropic, BiVector};
use crate::weyl::{phi, Polarization};

/// Darboux space with positions `x_i` and momenta `y_i`, `{x_i, y_i} = 1`.
#[derive(Clone, Debug)]
pub struct PhaseSpace {
    ctx: Arc<Context>,
    half: usize,
}

impl PhaseSpace {
    /// Variables ordered as all positions, then all momenta.
    pub fn new(positions: &[&str], momenta: &[&str]) -> Result<Self> {
        if positions.len() != momenta.len() {
            return Err(Error::DimensionMismatch {
                expected: positions.len(),
                found: momenta.len(),
            });
        }
        let ctx = Context::new(positions.iter().chain(momenta).copied());
        Ok(PhaseSpace {
            ctx,
            half: positions.len(),
        })
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Number of position variables.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn positions(&self) -> Vec<&str> {
        (0..self.half).map(|i| self.ctx.name(i)).collect()
    }

    pub fn momenta(&self) -> Vec<&str> {
        (self.half..2 * self.half)
            .map(|i| self.ctx.name(i))
            .collect()
    }

    pub fn bivector(&self) -> BiVector {
        let pairs: Vec<(usize, usize)> = (0..self.half).map(|i| (i, self.half + i)).collect();
        BiVector::darboux(2 * self.half, &pairs).expect("indices in range")
    }

    pub fn polarization(&self) -> Polarization {
        let pairs: Vec<(&str, &str)> = self.positions().into_iter().zip(self.momenta()).collect();
        Polarization::new(&self.ctx, &pairs).expect("every variable paired")
    }

    pub fn var(&self, name: &str) -> Result<Poly<RatFunc>> {
        Poly::var_named(&self.ctx, name)
    }

    /// Row `[coefficients of positions | coefficients of momenta]` of a
    /// homogeneous linear polynomial.
    fn linear_row(&self, p: &Poly<RatFunc>) -> Result<Vec<RatFunc>> {
        let (lin, c0) = p.linear_coefficients()?;
        if !c0.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "`{p}` does not vanish at the origin"
            )));
        }
        Ok(lin)
    }
}

fn rf(r: Rational) -> RatFunc {
    RatFunc::constant(r)
}

/// Linear Lagrangian `M·y + N·x = 0`.
#[derive(Clone, Debug)]
pub struct LinearLagrangian {
    space: PhaseSpace,
    m: Matrix<RatFunc>,
    n: Matrix<RatFunc>,
}

impl LinearLagrangian {
    pub fn new(space: &PhaseSpace, m: Matrix<RatFunc>, n: Matrix<RatFunc>) -> Result<Self> {
        let h = space.half();
        for a in [&m, &n] {
            if a.rows() != h || a.cols() != h {
                return Err(Error::DimensionMismatch {
                    expected: h,
                    found: a.rows().max(a.cols()),
                });
            }
        }
        // {M_ij y_j + N_ij x_j, M_ks y_s + N_ks x_s} = N_ij M_kj − M_ij N_kj
        let closure = n.mul(&m.transpose())?.sub(&m.mul(&n.transpose())?)?;
        if !closure.is_zero() {
            return Err(Error::PoissonClosure(format!("N·Mᵀ − M·Nᵀ = {closure}")));
        }
        if m.rank() < h && n.rank() < h {
            return Err(Error::NotLagrangian(
                "both M and N are rank-deficient".into(),
            ));
        }
        Ok(LinearLagrangian {
            space: space.clone(),
            m,
            n,
        })
    }

    /// Read `M`, `N` off `h` linear generators.
    pub fn from_generators(space: &PhaseSpace, gens: &[Poly<RatFunc>]) -> Result<Self> {
        let h = space.half();
        if gens.len() != h {
            return Err(Error::NotLagrangian(format!(
                "{} equations in a space with {h} positions",
                gens.len()
            )));
        }
        let rows = gens
            .iter()
            .map(|g| space.linear_row(g))
            .collect::<Result<Vec<_>>>()?;
        let n = Matrix::from_fn(h, h, |i, j| rows[i][j].clone());
        let m = Matrix::from_fn(h, h, |i, j| rows[i][h + j].clone());
        Self::new(space, m, n)
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn m(&self) -> &Matrix<RatFunc> {
        &self.m
    }

    pub fn n(&self) -> &Matrix<RatFunc> {
        &self.n
    }

    /// Image under `y ↦ −y`.
    pub fn reflected(&self) -> Self {
        LinearLagrangian {
            space: self.space.clone(),
            m: self.m.scale(&RatFunc::one().neg()),
            n: self.n.clone(),
        }
    }

    pub fn generators(&self) -> Vec<Poly<RatFunc>> {
        let h = self.space.half();
        let ctx = self.space.context();
        (0..h)
            .map(|i| {
                let terms = (0..h).flat_map(|j| {
                    [
                        (Monomial::var(j), self.n.get(i, j).clone()),
                        (Monomial::var(h + j), self.m.get(i, j).clone()),
                    ]
                });
                Poly::from_terms(ctx, terms)
            })
            .collect()
    }
}

/// `exp((1/ℏ)[−½ v·K·v + z·Jᵀ·v + ½ z·C·z])` up to a constant factor, with
/// integration variables `v` and sources `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianForm {
    vars: Arc<Context>,
    sources: Arc<Context>,
    k: Matrix<RatFunc>,
    j: Matrix<RatFunc>,
    offset: Matrix<RatFunc>,
}

impl GaussianForm {
    pub fn new(
        vars: &Arc<Context>,
        sources: &Arc<Context>,
        k: Matrix<RatFunc>,
        j: Matrix<RatFunc>,
        offset: Matrix<RatFunc>,
    ) -> Result<Self> {
        let (n, s) = (vars.len(), sources.len());
        if k.rows() != n
            || k.cols() != n
            || j.rows() != n
            || j.cols() != s
            || offset.rows() != s
            || offset.cols() != s
        {
            return Err(Error::Shape("K is n×n, J is n×s, C is s×s"));
        }
        if !k.is_symmetric() || !offset.is_symmetric() {
            return Err(Error::Shape("symmetric K and C"));
        }
        Ok(GaussianForm {
            vars: vars.clone(),
            sources: sources.clone(),
            k,
            j,
            offset,
        })
    }

    pub fn vars(&self) -> &Arc<Context> {
        &self.vars
    }

    pub fn sources(&self) -> &Arc<Context> {
        &self.sources
    }

    /// `K` without its `1/ℏ`.
    pub fn k(&self) -> &Matrix<RatFunc> {
        &self.k
    }

    /// Source couplings, column `a` multiplying `z_a`, without `1/ℏ`.
    pub fn j(&self) -> &Matrix<RatFunc> {
        &self.j
    }

    /// `C` in `½ z·C·z`, without `1/ℏ`.
    pub fn offset(&self) -> &Matrix<RatFunc> {
        &self.offset
    }

    /// `ℏ` times the exponent, over the variables followed by the sources.
    pub fn exponent(&self) -> Poly<RatFunc> {
        let n = self.vars.len();
        let ctx = Context::new(
            self.vars
                .names()
                .iter()
                .chain(self.sources.names())
                .cloned(),
        );
        let half = rf(rat(1, 2));
        let mut terms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.k.get(a, b).mul(&half).neg();
                terms.push((Monomial::var(a).mul(&Monomial::var(b)), c));
            }
            for s in 0..self.sources.len() {
                terms.push((
                    Monomial::var(a).mul(&Monomial::var(n + s)),
                    self.j.get(a, s).clone(),
                ));
            }
        }
        for s in 0..self.sources.len() {
            for t in 0..self.sources.len() {
                let c = self.offset.get(s, t).mul(&half);
                terms.push((Monomial::var(n + s).mul(&Monomial::var(n + t)), c));
            }
        }
        Poly::from_terms(&ctx, terms)
    }

    /// Whether the quantised generators annihilate the Gaussian; the
    /// space's positions must be the variables followed by the sources.
    pub fn annihilated_by(&self, space: &PhaseSpace, gens: &[Poly<RatFunc>]) -> Result<bool> {
        let s = self.exponent();
        let pol = space.polarization();
        if pol.positions().names() != s.context().names() {
            return Err(Error::ContextMismatch {
                left: pol.positions().to_string(),
                right: s.context().to_string(),
            });
        }
        for g in gens {
            let op = phi(&g.embed(space.context())?, &pol, 2)?;
            if !op.apply_conjugated(&s)?.iter().all(Poly::is_zero) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficient `c₁` in `exp(c₁ z²/2ℏ)` for a single source and no
    /// remaining variables.
    pub fn z_coefficient(&self) -> Result<RatFunc> {
        if !self.vars.is_empty() || self.sources.len() != 1 {
            return Err(Error::Shape("one source, no integration variables"));
        }
        Ok(self.offset.get(0, 0).clone())
    }

    pub fn specialize(&self, point: &[Rational]) -> Result<GaussianForm> {
        let f = |m: &Matrix<RatFunc>| -> Result<Matrix<RatFunc>> {
            let rows = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| m.get(i, j).specialize(point))
                        .collect()
                })
                .collect::<Result<Vec<Vec<_>>>>()?;
            if rows.is_empty() {
                return Ok(Matrix::zeros(0, m.cols()));
            }
            Matrix::from_rows(rows)
        };
        Ok(GaussianForm {
            vars: self.vars.clone(),
            sources: self.sources.clone(),
            k: f(&self.k)?,
            j: f(&self.j)?,
            offset: f(&self.offset)?,
        })
    }
}

impl fmt::Display for GaussianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.exponent();
        if e.is_zero() {
            write!(f, "const")
        } else {
            write!(f, "const*exp((1/ħ)*({e}))")
        }
    }
}

/// Wavefunction of a linear Lagrangian: `exp(−(1/2ℏ) x·Q·x)` with
/// `Q = M⁻¹N`. Positions whose momenta are absent from every equation are
/// eliminated first and dropped from the variables.
pub fn lagrangian_wavefunction(l: &LinearLagrangian) -> Result<GaussianForm> {
    let h = l.space.half();
    let names = l.space.positions();
    let empty = Context::new(Vec::<String>::new());
    if let Ok(minv) = l.m.inverse() {
        let q = minv.mul(&l.n)?;
        let vars = Context::new(names);
        return GaussianForm::new(&vars, &empty, q, Matrix::zeros(h, 0), Matrix::zeros(0, 0));
    }
    let missing: Vec<usize> = (0..h)
        .filter(|&j| (0..h).all(|i| l.m.get(i, j).is_zero()))
        .collect();
    let kept: Vec<usize> = (0..h).filter(|j| !missing.contains(j)).collect();
    if missing.is_empty() {
        return Err(Error::NotLagrangian(
            "M is singular but no momentum is absent; choose other coordinates".into(),
        ));
    }
    // row-reduce [M_kept | N_missing | N_kept]
    let cols: Vec<(bool, usize)> = kept
        .iter()
        .map(|&j| (true, j))
        .chain(missing.iter().map(|&j| (false, j)))
        .chain(kept.iter().map(|&j| (false, j)))
        .collect();
    let aug = Matrix::from_fn(h, cols.len(), |i, c| {
        let (is_m, j) = cols[c];
        if is_m { l.m.get(i, j) } else { l.n.get(i, j) }.clone()
    });
    let (r, pivots) = aug.rref();
    let nk = kept.len();
    let nm = missing.len();
    if pivots.len() < h
        || pivots[..nk] != (0..nk).collect::<Vec<_>>()[..]
        || pivots[nk..] != (nk..nk + nm).collect::<Vec<_>>()[..]
    {
        return Err(Error::NotLagrangian(
            "eliminated positions are not determined by the equations".into(),
        ));
    }
    // rows nk.. read x_missing = −R·x_kept; rows ..nk read y_kept + P x_missing + T x_kept = 0
    let block = |row0: usize, rows: usize, col0: usize, ncols: usize| {
        Matrix::from_fn(rows, ncols, |i, j| r.get(row0 + i, col0 + j).clone())
    };
    let rel = block(nk, nm, nk + nm, nk);
    let p = block(0, nk, nk, nm);
    let t = block(0, nk, nk + nm, nk);
    let q = t.sub(&p.mul(&rel)?)?;
    let vars = Context::new(kept.iter().map(|&j| names[j]));
    GaussianForm::new(&vars, &empty, q, Matrix::zeros(nk, 0), Matrix::zeros(0, 0))
}

/// Linear coisotropic subspace given by homogeneous linear equations.
#[derive(Clone, Debug)]
pub struct CoisotropicSubspace {
    space: PhaseSpace,
    equations: Vec<Poly<RatFunc>>,
}

impl CoisotropicSubspace {
    pub fn new(space: &PhaseSpace, equations: Vec<Poly<RatFunc>>) -> Result<Self> {
        let rows = equations
            .iter()
            .map(|e| space.linear_row(e))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() || Matrix::from_rows(rows)?.rank() < equations.len() {
            return Err(Error::InvalidArgument(
                "equations must be nonempty and independent".into(),
            ));
        }
        if !is_coisotropic(&equations, &space.bivector())? {
            return Err(Error::PoissonClosure(
                "equations do not Poisson-commute".into(),
            ));
        }
        Ok(CoisotropicSubspace {
            space: space.clone(),
            equations,
        })
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn equations(&self) -> &[Poly<RatFunc>] {
        &self.equations
    }

    /// Number of Darboux pairs of `G/G^⊥`.
    pub fn reduced_pairs(&self) -> usize {
        self.space.half() - self.equations.len()
    }
}

/// How the extension functions were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `ζ_k` is the equation restricted to the `k`-th pair and `ξ_k` is a
    /// combination of positions.
    Restricted,
    /// Symplectic Gram–Schmidt on the commutant of the equations.
    GramSchmidt,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Restricted => "restricted",
            Chart::GramSchmidt => "gram-schmidt",
        })
    }
}

/// `X = W ⊕ G/G^⊥` with `G_X` cut out by `z_k − ζ_k`, `w_k − ξ_k` and the
/// equations of `G`.
#[derive(Clone, Debug)]
pub struct Extension {
    g: CoisotropicSubspace,
    extended: PhaseSpace,
    zeta: Vec<Poly<RatFunc>>,
    xi: Vec<Poly<RatFunc>>,
    chart: Chart,
}

impl Extension {
    pub fn zeta(&self) -> &[Poly<RatFunc>] {
        &self.zeta
    }

    pub fn xi(&self) -> &[Poly<RatFunc>] {
        &self.xi
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn extended(&self) -> &PhaseSpace {
        &self.extended
    }

    pub fn subspace(&self) -> &CoisotropicSubspace {
        &self.g
    }

    /// Generators of `I(G_X)` in the extended space.
    pub fn ideal(&self) -> Result<Vec<Poly<RatFunc>>> {
        let ctx = self.extended.context();
        let h = self.g.space.half();
        let r = self.zeta.len();
        let mut out = Vec::new();
        for k in 0..r {
            let z = Poly::var(ctx, h + k)?;
            let w = Poly::var(ctx, 2 * h + r + k)?;
            out.push(z.try_sub(&self.zeta[k].embed(ctx)?)?);
            out.push(w.try_sub(&self.xi[k].embed(ctx)?)?);
        }
        for e in &self.g.equations {
            out.push(e.embed(ctx)?);
        }
        Ok(out)
    }
}

fn extended_space(space: &PhaseSpace, pairs: usize) -> Result<PhaseSpace> {
    let zs: Vec<String> = (1..=pairs).map(|k| format!("z{k}")).collect();
    let ws: Vec<String> = (1..=pairs).map(|k| format!("w{k}")).collect();
    for n in zs.iter().chain(&ws) {
        if space.context().index_of(n).is_ok() {
            return Err(Error::InvalidArgument(format!(
                "variable name `{n}` is reserved for the extension"
            )));
        }
    }
    let mut pos: Vec<&str> = space.positions();
    pos.extend(zs.iter().map(String::as_str));
    let mut mom: Vec<&str> = space.momenta();
    mom.extend(ws.iter().map(String::as_str));
    PhaseSpace::new(&pos, &mom)
}

fn from_row(ctx: &Arc<Context>, row: &[RatFunc]) -> Poly<RatFunc> {
    Poly::from_terms(
        ctx,
        row.iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(i), c.clone())),
    )
}

/// Bracket `{u, v}` of linear forms given as coefficient rows.
fn omega(space: &PhaseSpace, u: &[RatFunc], v: &[RatFunc]) -> RatFunc {
    let h = space.half();
    (0..h).fold(RatFunc::zero(), |acc, i| {
        acc.add(&u[i].mul(&v[h + i])).sub(&u[h + i].mul(&v[i]))
    })
}

/// Linear `ζ_k`, `ξ_k` making `I(G_X)` Poisson-closed.
///
/// Tries the restricted chart first (for a single equation), falling back
/// to symplectic Gram–Schmidt.
pub fn extend_coisotropic(g: &CoisotropicSubspace) -> Result<Extension> {
    let pairs = g.reduced_pairs();
    let extended = extended_space(&g.space, pairs)?;
    let (zeta, xi, chart) = match restricted_chart(g)? {
        Some((z, x)) => (z, x, Chart::Restricted),
        None => {
            let (z, x) = gram_schmidt_chart(g)?;
            (z, x, Chart::GramSchmidt)
        }
    };
    let ext = Extension {
        g: g.clone(),
        extended,
        zeta,
        xi,
        chart,
    };
    if !is_coisotropic(&ext.ideal()?, &ext.extended.bivector())? {
        return Err(Error::NoExtension(
            "extension ideal is not Poisson-closed".into(),
        ));
    }
    Ok(ext)
}

type Forms = (Vec<Poly<RatFunc>>, Vec<Poly<RatFunc>>);

fn restricted_chart(g: &CoisotropicSubspace) -> Result<Option<Forms>> {
    let space = &g.space;
    let h = space.half();
    let pairs = g.reduced_pairs();
    if g.equations.len() != 1 {
        return Ok(None);
    }
    let row = space.linear_row(&g.equations[0])?;
    let zetas: Vec<Vec<RatFunc>> = (0..pairs)
        .map(|k| {
            let mut r = vec![RatFunc::zero(); 2 * h];
            r[k] = row[k].clone();
            r[h + k] = row[h + k].clone();
            r
        })
        .collect();
    if zetas.iter().any(|z| z.iter().all(RatFunc::is_zero)) {
        return Ok(None);
    }
    // ξ_l = Σ β_i x_i with {H, ξ_l} = 0 and {ζ_k, ξ_l} = −δ_kl
    let mut xis = Vec::new();
    for l in 0..pairs {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let as_row = |beta: usize| {
            let mut r = vec![RatFunc::zero(); 2 * h];
            r[beta] = RatFunc::one();
            r
        };
        rows.push(
            (0..h)
                .map(|i| omega(space, &row, &as_row(i)))
                .collect::<Vec<_>>(),
        );
        rhs.push(RatFunc::zero());
        for (k, z) in zetas.iter().enumerate() {
            rows.push((0..h).map(|i| omega(space, z, &as_row(i))).collect());
            rhs.push(if k == l {
                RatFunc::one().neg()
            } else {
                RatFunc::zero()
            });
        }
        let beta = match Matrix::from_rows(rows)?.solve(&rhs) {
            Ok(b) => b,
            Err(Error::Singular) | Err(Error::InvalidArgument(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut r = vec![RatFunc::zero(); 2 * h];
        r[..h].clone_from_slice(&beta);
        xis.push(r);
    }
    for a in 0..pairs {
        for b in 0..pairs {
            if !omega(space, &zetas[a], &zetas[b]).is_zero()
                || !omega(space, &xis[a], &xis[b]).is_zero()
            {
                return Ok(None);
            }
        }
    }
    let ctx = space.context();
    Ok(Some((
        zetas.iter().map(|r| from_row(ctx, r)).collect(),
        xis.iter().map(|r| from_row(ctx, r)).collect(),
    )))
}

fn gram_schmidt_chart(g: &CoisotropicSubspace) -> Result<Forms> {
    let space = &g.space;
    let h = space.half();
    let eqs = g
        .equations
        .iter()
        .map(|e| space.linear_row(e))
        .collect::<Result<Vec<_>>>()?;
    // commutant: linear forms v with ω(e, v) = 0 for every equation e
    let cond = Matrix::from_rows(
        eqs.iter()
            .map(|e| {
                (0..2 * h)
                    .map(|i| {
                        let mut unit = vec![RatFunc::zero(); 2 * h];
                        unit[i] = RatFunc::one();
                        omega(space, e, &unit)
                    })
                    .collect()
            })
            .collect(),
    )?;
    // complement of the span of the equations inside the commutant
    let mut basis: Vec<Vec<RatFunc>> = Vec::new();
    let mut span = eqs.clone();
    for v in cond.nullspace() {
        let mut trial = span.clone();
        trial.push(v.clone());
        if Matrix::from_rows(trial.clone())?.rank() == trial.len() {
            span = trial;
            basis.push(v);
        }
    }
    let mut zetas = Vec::new();
    let mut xis = Vec::new();
    while let Some(e) = basis.first().cloned() {
        basis.remove(0);
        let Some(pos) = basis.iter().position(|f| !omega(space, &e, f).is_zero()) else {
            return Err(Error::NoExtension("degenerate reduced form".into()));
        };
        let f = basis.remove(pos);
        // normalise {e, f} = −1
        let s = omega(space, &e, &f).inv().expect("nonzero").neg();
        let f: Vec<RatFunc> = f.iter().map(|c| c.mul(&s)).collect();
        // project the rest off span(e, f)
        basis = basis
            .into_iter()
            .map(|v| {
                let ve = omega(space, &v, &e);
                let vf = omega(space, &v, &f);
                // ω(v − αe − βf, e) = 0, ω(·, f) = 0 with ω(e,f) = −1
                (0..2 * h)
                    .map(|i| v[i].sub(&vf.mul(&e[i]).neg()).sub(&ve.mul(&f[i])))
                    .collect()
            })
            .collect();
        zetas.push(e);
        xis.push(f);
    }
    let ctx = space.context();
    Ok((
        zetas.iter().map(|r| from_row(ctx, r)).collect(),
        xis.iter().map(|r| from_row(ctx, r)).collect(),
    ))
}

/// Gaussian annihilated by the quantised `I(G_X)`, in positions `x` with
/// sources `z`, found by solving for `K`, `J`, `C` as unknowns.
pub fn coisotropic_wavefunction(e: &Extension) -> Result<GaussianForm> {
    let gens = e.ideal()?;
    let space = &e.extended;
    let n = e.g.space.half();
    let s = e.zeta.len();
    let total = n + s;
    // unknowns: K_ab (a ≤ b), J_ak, C_kl (k ≤ l); each with its quadratic
    // basis function in the positions of X
    let mut basis: Vec<Vec<(usize, usize, Rational)>> = Vec::new();
    let mut slots: Vec<(char, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let c = if a == b { rat(-1, 2) } else { rat(-1, 1) };
            basis.push(vec![(a, b, c)]);
            slots.push(('K', a, b));
        }
    }
    for a in 0..n {
        for k in 0..s {
            basis.push(vec![(a, n + k, rat(1, 1))]);
            slots.push(('J', a, k));
        }
    }
    for k in 0..s {
        for l in k..s {
            let c = if k == l { rat(1, 2) } else { rat(1, 1) };
            basis.push(vec![(n + k, n + l, c)]);
            slots.push(('C', k, l));
        }
    }
    // gradient of a basis function: ∂_p (c·v_i v_j), as coefficients of v_q
    let grad = |f: &[(usize, usize, Rational)], p: usize, q: usize| -> Rational {
        f.iter().fold(Rational::zero(), |acc, (i, j, c)| {
            let mut d = Rational::zero();
            if *i == p && *j == q {
                d += c;
            }
            if *j == p && *i == q {
                d += c;
            }
            acc + d
        })
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in &gens {
        let row = space.linear_row(g)?;
        let (alpha, beta) = row.split_at(total);
        for (q, a) in alpha.iter().enumerate() {
            rows.push(
                basis
                    .iter()
                    .map(|f| {
                        (0..total).fold(RatFunc::zero(), |acc, p| {
                            acc.add(&beta[p].mul(&rf(grad(f, p, q))))
                        })
                    })
                    .collect(),
            );
            rhs.push(a.neg());
        }
    }
    let sol = Matrix::from_rows(rows)?
        .solve(&rhs)
        .map_err(|err| match err {
            Error::Singular => {
                Error::SingularPivot("the quantised equations do not fix a unique Gaussian".into())
            }
            Error::InvalidArgument(_) => {
                Error::SingularPivot("the quantised equations have no Gaussian solution".into())
            }
            other => other,
        })?;
    let mut k = Matrix::zeros(n, n);
    let mut j = Matrix::zeros(n, s);
    let mut c = Matrix::zeros(s, s);
    for ((kind, a, b), v) in slots.into_iter().zip(sol) {
        match kind {
            'K' => {
                k.set(a, b, v.clone());
                k.set(b, a, v);
            }
            'J' => j.set(a, b, v),
            _ => {
                c.set(a, b, v.clone());
                c.set(b, a, v);
            }
        }
    }
    let vars = Context::new(e.g.space.positions());
    let sources = Context::new((1..=s).map(|k| format!("z{k}")));
    GaussianForm::new(&vars, &sources, k, j, c)
}

/// `exp(−V(∂_J)) exp(½ J·(K′)⁻¹·J)` written as `P(J)·exp(½ J·M·J)` with
/// `M = (K′)⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralIdentity {
    pub inverse: Matrix<RatFunc>,
    pub prefactor: Poly<RatFunc>,
}

impl CentralIdentity {
    /// `½ J·M·J` as a polynomial in the sources.
    pub fn exponent(&self) -> Poly<RatFunc> {
        let ctx = self.prefactor.context();
        let n = self.inverse.rows();
        let half = &rf(rat(1, 2));
        Poly::from_terms(
            ctx,
            (0..n).flat_map(|a| {
                (0..n).map(move |b| {
                    (
                        Monomial::var(a).mul(&Monomial::var(b)),
                        self.inverse.get(a, b).mul(half),
                    )
                })
            }),
        )
    }
}

/// Central identity of Gaussian integration. `potential` is `V` written in
/// the source variables standing for `∂/∂J`; the prefactor
/// `exp(−V(∂_J + M J))·1` is expanded to order `order` in `V`.
pub fn central_identity(
    kp: &Matrix<RatFunc>,
    potential: &Poly<RatFunc>,
    order: usize,
) -> Result<CentralIdentity> {
    if !kp.is_square() || kp.rows() != potential.context().len() {
        return Err(Error::DimensionMismatch {
            expected: kp.rows(),
            found: potential.context().len(),
        });
    }
    let m = kp.inverse().map_err(|_| {
        Error::NonTransversal("K′ is singular; the Gaussian integral does not exist".into())
    })?;
    let ctx = potential.context();
    let n = kp.rows();
    let mj: Vec<Poly<RatFunc>> = (0..n)
        .map(|a| Poly::from_terms(ctx, (0..n).map(|b| (Monomial::var(b), m.get(a, b).clone()))))
        .collect();
    // D_a p = ∂_a p + (M J)_a p
    let apply_v = |p: &Poly<RatFunc>| -> Poly<RatFunc> {
        let mut out = Poly::zero(ctx);
        for (mono, c) in potential.terms() {
            let mut t = p.clone();
            for &(a, e) in mono.exponents() {
                for _ in 0..e {
                    t = &t.diff_unchecked(a) + &(&mj[a] * &t);
                }
            }
            out = &out + &t.scale(c);
        }
        out
    };
    let mut term = Poly::one(ctx);
    let mut prefactor = Poly::one(ctx);
    for k in 1..=order {
        term = apply_v(&term).scale(&rf(rat(-1, k as i64)));
        if term.is_zero() {
            break;
        }
        prefactor = &prefactor + &term;
    }
    Ok(CentralIdentity {
        inverse: m,
        prefactor,
    })
}

/// Integrate out all variables of a Gaussian: `C ↦ C + Jᵀ K⁻¹ J`.
pub fn integrate_out(g: &GaussianForm) -> Result<GaussianForm> {
    let jctx = Context::new(g.vars.names().iter().cloned());
    let ci = central_identity(&g.k, &Poly::zero(&jctx), 0)?;
    let offset = g
        .offset
        .add(&g.j.transpose().mul(&ci.inverse)?.mul(&g.j)?)?;
    let empty = Context::new(Vec::<String>::new());
    GaussianForm::new(
        &empty,
        &g.sources,
        Matrix::zeros(0, 0),
        Matrix::zeros(0, g.sources.len()),
        offset,
    )
}

/// Product of `ψ_G` with the Gaussian in its integration variables.
fn multiply_kernel(psi_g: &GaussianForm, kernel: &GaussianForm) -> Result<GaussianForm> {
    if psi_g.vars.names() != kernel.vars.names() || !kernel.sources.is_empty() {
        return Err(Error::ContextMismatch {
            left: psi_g.vars.to_string(),
            right: kernel.vars.to_string(),
        });
    }
    GaussianForm::new(
        &psi_g.vars,
        &psi_g.sources,
        psi_g.k.add(&kernel.k)?,
        psi_g.j.clone(),
        psi_g.offset.clone(),
    )
}

/// `∫ ψ_G · ψ_{L̄}` over the positions of `W`, with `L̄` the reflection of
/// `L`.
pub fn gaussian_route(e: &Extension, l: &LinearLagrangian) -> Result<GaussianForm> {
    let psi_g = coisotropic_wavefunction(e)?;
    let kernel = lagrangian_wavefunction(&l.reflected())?;
    integrate_out(&multiply_kernel(&psi_g, &kernel)?)
}

/// Coefficient matrix of the equations of `G`, `L` and `z − ζ` in `(x, y)`.
fn elimination_matrix(
    g: &CoisotropicSubspace,
    l: &LinearLagrangian,
    e: &Extension,
) -> Result<Matrix<RatFunc>> {
    let space = &g.space;
    let rows = g
        .equations
        .iter()
        .chain(l.generators().iter())
        .chain(e.zeta.iter())
        .map(|p| space.linear_row(p))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Solve the equations of `G`, `L` and `z = ζ` for `(x, y)`, read off
/// `w = ξ = C z`, and quantise `ℏ∂_z ψ = C z ψ`.
pub fn eliminate_and_quantise(
    g: &CoisotropicSubspace,
    l: &LinearLagrangian,
    e: &Extension,
) -> Result<GaussianForm> {
    let a = elimination_matrix(g, l, e)?;
    let h2 = 2 * g.space.half();
    let s = e.zeta.len();
    if a.rows() != h2 {
        return Err(Error::DimensionMismatch {
            expected: h2,
            found: a.rows(),
        });
    }
    if a.rank() < h2 {
        return Err(Error::NonTransversal(
            "G and L fail to intersect transversally".into(),
        ));
    }
    let inv = a.inverse()?;
    // right-hand side: z_k in the rows of z − ζ
    let b = Matrix::from_fn(h2, s, |i, k| {
        if i == h2 - s + k {
            RatFunc::one()
        } else {
            RatFunc::zero()
        }
    });
    let xi = Matrix::from_rows(
        e.xi.iter()
            .map(|p| g.space.linear_row(p))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let c = xi.mul(&inv)?.mul(&b)?;
    if !c.is_symmetric() {
        return Err(Error::NotLagrangian("w = C z with C not symmetric".into()));
    }
    let empty = Context::new(Vec::<String>::new());
    let sources = Context::new((1..=s).map(|k| format!("z{k}")));
    GaussianForm::new(
        &empty,
        &sources,
        Matrix::zeros(0, 0),
        Matrix::zeros(0, s),
        c,
    )
}

/// Two independent detections of a non-transversal intersection.
#[derive(Clone, Debug, PartialEq)]
pub struct Transversality {
    /// `det(K + Q)` with `Q` the pairing kernel of `L` (without `1/ℏ`).
    pub det_kernel: RatFunc,
    /// Whether the elimination system is rank-deficient.
    pub elimination_deficient: bool,
}

impl Transversality {
    pub fn det_vanishes(&self) -> bool {
        self.det_kernel.is_zero()
    }
}

pub fn transversality(
    g: &CoisotropicSubspace,
    l: &LinearLagrangian,
    e: &Extension,
) -> Result<Transversality> {
    let psi_g = coisotropic_wavefunction(e)?;
    let kernel = lagrangian_wavefunction(&l.reflected())?;
    let det_kernel = psi_g.k.add(&kernel.k)?.det()?;
    let a = elimination_matrix(g, l, e)?;
    Ok(Transversality {
        det_kernel,
        elimination_deficient: a.rank() < a.rows(),
    })
}

/// Outcome of reducing `ψ_L` along `G`.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub extension: Extension,
    pub psi_g: GaussianForm,
    pub psi_l: GaussianForm,
    pub gaussian: GaussianForm,
    pub eliminated: GaussianForm,
    pub agree: bool,
}

impl ReductionReport {
    /// `c₁` in `exp(c₁ z²/2ℏ)` from the elimination route.
    pub fn coefficient(&self) -> Result<RatFunc> {
        self.eliminated.z_coefficient()
    }
}

/// Extend `G`, run both routes and compare their exponents.
pub fn reduce_wavefunction(
    g: &CoisotropicSubspace,
    l: &LinearLagrangian,
) -> Result<ReductionReport> {
    let extension = extend_coisotropic(g)?;
    let psi_g = coisotropic_wavefunction(&extension)?;
    let psi_l = lagrangian_wavefunction(l)?;
    let eliminated = eliminate_and_quantise(g, l, &extension)?;
    let gaussian = gaussian_route(&extension, l)?;
    let agree = gaussian.offset == eliminated.offset;
    Ok(ReductionReport {
        extension,
        psi_g,
        psi_l,
        gaussian,
        eliminated,
        agree,
    })
}

/// The four-dimensional example: `W = k[x1, x2, y1, y2]`,
/// `G = ⟨a x1 + b x2 + c y1 + d y2⟩` and
/// `L = ⟨y1 + A x1 + B x2, y2 + B x1 + D x2⟩`.
#[derive(Clone, Debug)]
pub struct Ks4d {
    pub space: PhaseSpace,
    /// Values of `a, b, c, d, A, B, D`.
    pub params: [RatFunc; 7],
}

pub const KS4D_PARAMS: [&str; 7] = ["a", "b", "c", "d", "A", "B", "D"];

impl Ks4d {
    fn space() -> PhaseSpace {
        PhaseSpace::new(&["x1", "x2"], &["y1", "y2"]).expect("two pairs")
    }

    /// Parameters as indeterminates.
    pub fn symbolic() -> Self {
        let ctx = Context::new(KS4D_PARAMS);
        let params =
            std::array::from_fn(|i| RatFunc::param(&ctx, KS4D_PARAMS[i]).expect("declared"));
        Ks4d {
            space: Self::space(),
            params,
        }
    }

    pub fn with_params(params: [RatFunc; 7]) -> Self {
        Ks4d {
            space: Self::space(),
            params,
        }
    }

    pub fn numeric(values: [Rational; 7]) -> Self {
        Ks4d {
            space: Self::space(),
            params: values.map(RatFunc::constant),
        }
    }

    fn linear(&self, coeffs: [(usize, &RatFunc); 4]) -> Poly<RatFunc> {
        Poly::from_terms(
            self.space.context(),
            coeffs
                .iter()
                .map(|(i, c)| (Monomial::var(*i), (*c).clone())),
        )
    }

    pub fn coisotropic(&self) -> Result<CoisotropicSubspace> {
        let [a, b, c, d, ..] = &self.params;
        let h = self.linear([(0, a), (1, b), (2, c), (3, d)]);
        CoisotropicSubspace::new(&self.space, vec![h])
    }

    pub fn lagrangian(&self) -> Result<LinearLagrangian> {
        let [.., aa, bb, dd] = &self.params;
        let one = RatFunc::one();
        let zero = RatFunc::zero();
        let h1 = self.linear([(2, &one), (0, aa), (1, bb), (3, &zero)]);
        let h2 = self.linear([(3, &one), (0, bb), (1, dd), (2, &zero)]);
        LinearLagrangian::from_generators(&self.space, &[h1, h2])
    }

    /// `B² c d − (a − cA)(b − dD)`.
    pub fn degeneracy(&self) -> RatFunc {
        let [a, b, c, d, aa, bb, dd] = &self.params;
        bb.mul(bb)
            .mul(c)
            .mul(d)
            .sub(&a.sub(&c.mul(aa)).mul(&b.sub(&d.mul(dd))))
    }

    /// `(a − cA − dB, b − cB − dD)`.
    pub fn transversality_pair(&self) -> (RatFunc, RatFunc) {
        let [a, b, c, d, aa, bb, dd] = &self.params;
        (
            a.sub(&c.mul(aa)).sub(&d.mul(bb)),
            b.sub(&c.mul(bb)).sub(&d.mul(dd)),
        )
    }

    /// `X` from the closed form: `X = (−Ac² − 2Bcd − Dd² + ac + bd) /
    /// (cd(ADcd − Abc − B²cd − Dad + ab))`.
    pub fn closed_form(&self) -> RatFunc {
        let [a, b, c, d, aa, bb, dd] = &self.params;
        let two = rf(rat(2, 1));
        let num = aa
            .mul(c)
            .mul(c)
            .neg()
            .sub(&two.mul(bb).mul(c).mul(d))
            .sub(&dd.mul(d).mul(d))
            .add(&a.mul(c))
            .add(&b.mul(d));
        let cd = c.mul(d);
        let den = cd.mul(
            &aa.mul(dd)
                .mul(&cd)
                .sub(&aa.mul(b).mul(c))
                .sub(&bb.mul(bb).mul(&cd))
                .sub(&dd.mul(a).mul(d))
                .add(&a.mul(b)),
        );
        num.mul(&den.inv().unwrap_or_else(RatFunc::zero))
    }

    /// Random small rational tuple with `c, d ≠ 0` and transversal.
    pub fn random_transversal<R: Rng>(rng: &mut R) -> Self {
        loop {
            let t = Self::numeric(std::array::from_fn(|i| {
                random_rational(rng, i == 2 || i == 3)
            }));
            if !t.degeneracy().is_zero() {
                return t;
            }
        }
    }

    /// Random tuple on the degenerate locus `B²cd = (a − cA)(b − dD)`,
    /// solving for `D`.
    pub fn random_degenerate<R: Rng>(rng: &mut R) -> Self {
        loop {
            let v: [Rational; 7] = std::array::from_fn(|i| random_rational(rng, i == 2 || i == 3));
            let [a, b, c, d, aa, bb, _] = v.clone();
            let p = &a - &c * &aa;
            if p.is_zero() {
                continue;
            }
            let dd = (&b - &bb * &bb * &c * &d / &p) / &d;
            let [a, b, c, d, aa, bb] = [a, b, c, d, aa, bb];
            return Self::numeric([a, b, c, d, aa, bb, dd]);
        }
    }
}

fn random_rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-6..=6);
        let q: i64 = rng.gen_range(1..=4);
        if !(nonzero && p == 0) {
            return rat(p, q);
        }
    }
}

/// Whether `{f, g} = 0` for every pair of generators.
pub fn brackets_vanish(gens: &[Poly<RatFunc>], b: &BiVector) -> Result<bool> {
    for (i, f) in gens.iter().enumerate() {
        for g in &gens[i + 1..] {
            if !bracket(f, g, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> Ks4d {
        Ks4d::numeric([
            rat(1, 1),
            rat(1, 1),
            rat(1, 1),
            rat(1, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ])
    }

    #[test]
    fn symbolic_extension_and_psi_g() {
        let ex = Ks4d::symbolic();
        let g = ex.coisotropic().unwrap();
        let e = extend_coisotropic(&g).unwrap();
        assert_eq!(e.chart(), Chart::Restricted);
        assert_eq!(e.zeta()[0].to_string(), "a*x1 + c*y1");
        assert_eq!(e.xi()[0].to_string(), "(1/c)*x1 + (-1/d)*x2");
        let psi = coisotropic_wavefunction(&e).unwrap();
        assert_eq!(psi.k().get(0, 0).to_string(), "a/c");
        assert_eq!(psi.k().get(1, 1).to_string(), "b/d");
        assert!(psi.k().get(0, 1).is_zero());
        assert_eq!(psi.j().get(0, 0).to_string(), "1/c");
        assert_eq!(psi.j().get(1, 0).to_string(), "-1/d");
        assert!(psi.offset().is_zero());
        assert!(psi
            .annihilated_by(e.extended(), &e.ideal().unwrap())
            .unwrap());
    }

    #[test]
    fn symbolic_routes_agree() {
        let ex = Ks4d::symbolic();
        let r = reduce_wavefunction(&ex.coisotropic().unwrap(), &ex.lagrangian().unwrap()).unwrap();
        assert!(r.agree);
        assert_eq!(r.coefficient().unwrap(), ex.closed_form());
    }

    #[test]
    fn unit_point() {
        let ex = ones();
        let e = extend_coisotropic(&ex.coisotropic().unwrap()).unwrap();
        assert_eq!(e.zeta()[0].to_string(), "x1 + y1");
        assert_eq!(e.xi()[0].to_string(), "x1 - x2");
        let r = reduce_wavefunction(&ex.coisotropic().unwrap(), &ex.lagrangian().unwrap()).unwrap();
        assert!(r.agree);
        assert_eq!(r.coefficient().unwrap(), rf(rat(2, 1)));
        assert_eq!(r.eliminated.to_string(), "const*exp((1/ħ)*(z1^2))");
    }

    #[test]
    fn lagrangian_examples() {
        let ex = Ks4d::symbolic();
        let l = ex.lagrangian().unwrap();
        let psi = lagrangian_wavefunction(&l).unwrap();
        assert_eq!(psi.k(), l.n());
        assert!(psi.annihilated_by(l.space(), &l.generators()).unwrap());
        let refl = lagrangian_wavefunction(&l.reflected()).unwrap();
        assert_eq!(refl.k(), &l.n().scale(&RatFunc::one().neg()));

        let line = PhaseSpace::new(&["x"], &["y"]).unwrap();
        let q = rf(rat(5, 3));
        let gen = &line.var("y").unwrap() + &line.var("x").unwrap().scale(&q);
        let l1 = LinearLagrangian::from_generators(&line, std::slice::from_ref(&gen)).unwrap();
        let psi = lagrangian_wavefunction(&l1).unwrap();
        assert_eq!(psi.exponent().to_string(), "-5/6*x^2");
        assert!(psi.annihilated_by(&line, &[gen]).unwrap());
        let flat = LinearLagrangian::from_generators(&line, &[line.var("y").unwrap()]).unwrap();
        assert!(lagrangian_wavefunction(&flat).unwrap().exponent().is_zero());
    }

    #[test]
    fn missing_momentum_is_eliminated() {
        let space = PhaseSpace::new(&["x1", "x2"], &["y1", "y2"]).unwrap();
        let v = |n: &str| space.var(n).unwrap();
        let g1 = &v("y1") + &v("x1");
        let g2 = &v("x1") - &v("x2");
        let err = LinearLagrangian::from_generators(&space, &[g1, g2]);
        // {y1 + x1, x1 − x2} = −1 ≠ 0
        assert!(matches!(err, Err(Error::PoissonClosure(_))));
        let h1 = v("x1");
        let h2 = &v("y2") + &v("x2").scale(&rf(rat(2, 1)));
        let l = LinearLagrangian::from_generators(&space, &[h1, h2]).unwrap();
        let psi = lagrangian_wavefunction(&l).unwrap();
        assert_eq!(psi.vars().names(), &["x2".to_string()]);
        assert_eq!(psi.exponent().to_string(), "-x2^2");
        let both = LinearLagrangian::from_generators(&space, &[v("x1"), &v("x1") + &v("x1")]);
        assert!(matches!(both, Err(Error::NotLagrangian(_))));
    }

    #[test]
    fn central_identity_basics() {
        let ctx = Context::new(["j1", "j2"]);
        let ci = central_identity(&Matrix::identity(2), &Poly::zero(&ctx), 3).unwrap();
        assert_eq!(ci.prefactor, Poly::one(&ctx));
        assert_eq!(ci.exponent().to_string(), "1/2*j1^2 + 1/2*j2^2");
        let e = ci.exponent();
        for a in 0..2 {
            for b in 0..2 {
                let d = e.diff(a).unwrap().diff(b).unwrap();
                assert_eq!(d.constant_term(), ci.inverse.get(a, b).clone());
            }
        }
        // V = ∂_j: (1 − D + D²/2)·1 with D = ∂ + j
        let line = Context::new(["j"]);
        let v = Poly::<RatFunc>::var(&line, 0).unwrap();
        let ci = central_identity(&Matrix::identity(1), &v, 2).unwrap();
        assert_eq!(ci.prefactor.to_string(), "1/2*j^2 - j + 3/2");
        assert!(matches!(
            central_identity(&Matrix::<RatFunc>::zeros(1, 1), &v, 1),
            Err(Error::NonTransversal(_))
        ));
    }

    #[test]
    fn degenerate_tuple_rejected() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(7);
        let t = Ks4d::random_degenerate(&mut rng);
        assert!(t.degeneracy().is_zero());
        let err =
            reduce_wavefunction(&t.coisotropic().unwrap(), &t.lagrangian().unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonTransversal(_)));
    }

    #[test]
    fn trichotomy_on_random_tuples() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(11);
        for k in 0..10 {
            let t = if k % 2 == 0 {
                Ks4d::random_transversal(&mut rng)
            } else {
                Ks4d::random_degenerate(&mut rng)
            };
            let g = t.coisotropic().unwrap();
            let e = extend_coisotropic(&g).unwrap();
            let tr = transversality(&g, &t.lagrangian().unwrap(), &e).unwrap();
            let degenerate = t.degeneracy().is_zero();
            assert_eq!(tr.det_vanishes(), degenerate);
            assert_eq!(tr.elimination_deficient, degenerate);
        }
    }

    #[test]
    fn symbolic_det_matches_locus() {
        let t = Ks4d::symbolic();
        let g = t.coisotropic().unwrap();
        let e = extend_coisotropic(&g).unwrap();
        let tr = transversality(&g, &t.lagrangian().unwrap(), &e).unwrap();
        let [_, _, c, d, ..] = &t.params;
        assert_eq!(tr.det_kernel.mul(&c.mul(d)).neg(), t.degeneracy());
    }

    #[test]
    fn gram_schmidt_when_c_vanishes() {
        let t = Ks4d::numeric([
            rat(1, 1),
            rat(2, 1),
            rat(0, 1),
            rat(1, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ]);
        let e = extend_coisotropic(&t.coisotropic().unwrap()).unwrap();
        assert!(brackets_vanish(&e.ideal().unwrap(), &e.extended().bivector()).unwrap());
        assert!(matches!(
            coisotropic_wavefunction(&e),
            Err(Error::SingularPivot(_))
        ));
    }
}
