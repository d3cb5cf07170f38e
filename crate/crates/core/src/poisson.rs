//! Constant-coefficient Poisson bi-vectors and bi-maps.
//!
//! A bi-vector is a skew matrix `π^{ij}`; its bi-map acts on tensors by
//! `π(f ⊗ g) = π^{ij} ∂_i f ⊗ ∂_j g`, and the bracket is `prod ∘ π`. The
//! sign convention is whatever the caller puts in the matrix.

use std::sync::Arc;

use crate::algebra::{Coeff, Context, Matrix, Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// Skew-symmetric constant bi-vector.
#[derive(Clone, Debug, PartialEq)]
pub struct BiVector {
    pi: Matrix<Rational>,
}

impl BiVector {
    pub fn new(pi: Matrix<Rational>) -> Result<Self> {
        if !pi.is_square() {
            return Err(Error::Shape("square"));
        }
        if !pi.is_skew() {
            return Err(Error::Shape("skew-symmetric"));
        }
        Ok(BiVector { pi })
    }

    pub fn zero(dim: usize) -> Self {
        BiVector {
            pi: Matrix::zeros(dim, dim),
        }
    }

    /// Darboux form with `{a, b} = 1` for each listed index pair.
    pub fn darboux(dim: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut pi = Matrix::zeros(dim, dim);
        for &(a, b) in pairs {
            if a >= dim || b >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.max(b) + 1,
                });
            }
            pi.set(a, b, <Rational as Coeff>::one());
            pi.set(b, a, -<Rational as Coeff>::one());
        }
        Self::new(pi)
    }

    /// Plane convention with variables `(x, y)` and `{y, x} = 1`.
    pub fn plane() -> Self {
        Self::darboux(2, &[(1, 0)]).expect("2x2")
    }

    pub fn dim(&self) -> usize {
        self.pi.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.pi
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.pi.get(i, j)
    }
}

/// Symmetric constant matrix `γ^{ij}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugePart {
    gamma: Matrix<Rational>,
}

impl GaugePart {
    pub fn new(gamma: Matrix<Rational>) -> Result<Self> {
        if !gamma.is_symmetric() {
            return Err(Error::Shape("symmetric"));
        }
        Ok(GaugePart { gamma })
    }

    pub fn zero(dim: usize) -> Self {
        GaugePart {
            gamma: Matrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.gamma
    }
}

/// Split `τ` into its skew part `(τ − τᵀ)/2` and symmetric part `(τ + τᵀ)/2`.
pub fn skew_split(tau: &Matrix<Rational>) -> Result<(BiVector, GaugePart)> {
    if !tau.is_square() {
        return Err(Error::Shape("square"));
    }
    let half = Rational::new(1.into(), 2.into());
    let t = tau.transpose();
    let pi = tau.sub(&t)?.scale(&half);
    let gamma = tau.add(&t)?.scale(&half);
    Ok((BiVector::new(pi)?, GaugePart::new(gamma)?))
}

/// Element of the `k`-fold tensor power of the polynomial ring, stored as a
/// polynomial in `k` copies of the base variables.
///
/// Sums of pure tensors `Σ_a f_a ⊗ g_a` are canonical in this form; zero
/// pairs disappear automatically.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSum<C: Coeff = Rational> {
    base: Arc<Context>,
    factors: usize,
    poly: Poly<C>,
}

fn tensor_context(base: &Context, factors: usize) -> Arc<Context> {
    Context::new((0..factors).flat_map(|k| base.names().iter().map(move |n| format!("{n}@{k}"))))
}

impl<C: Coeff> TensorSum<C> {
    pub fn zero(base: &Arc<Context>, factors: usize) -> Self {
        TensorSum {
            base: base.clone(),
            factors,
            poly: Poly::zero(&tensor_context(base, factors)),
        }
    }

    /// `f_0 ⊗ f_1 ⊗ … ⊗ f_{k-1}`.
    pub fn pure(parts: &[Poly<C>]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty tensor".into()))?;
        let base = first.context().clone();
        let n = base.len();
        let ctx = tensor_context(&base, parts.len());
        let mut acc = Poly::one(&ctx);
        for (k, p) in parts.iter().enumerate() {
            first.check_context(p)?;
            let map: Vec<usize> = (0..n).map(|i| k * n + i).collect();
            acc = &acc * &p.reindex(&ctx, &map)?;
        }
        Ok(TensorSum {
            base,
            factors: parts.len(),
            poly: acc,
        })
    }

    pub fn pair(f: &Poly<C>, g: &Poly<C>) -> Result<Self> {
        Self::pure(&[f.clone(), g.clone()])
    }

    pub fn from_pairs(base: &Arc<Context>, pairs: &[(Poly<C>, Poly<C>)]) -> Result<Self> {
        let mut acc = Self::zero(base, 2);
        for (f, g) in pairs {
            acc = acc.add(&Self::pair(f, g)?)?;
        }
        Ok(acc)
    }

    pub fn base(&self) -> &Arc<Context> {
        &self.base
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(TensorSum {
            base: self.base.clone(),
            factors: self.factors,
            poly: self.poly.try_add(&other.poly)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(TensorSum {
            base: self.base.clone(),
            factors: self.factors,
            poly: self.poly.try_sub(&other.poly)?,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        TensorSum {
            base: self.base.clone(),
            factors: self.factors,
            poly: self.poly.scale(c),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.factors != other.factors {
            return Err(Error::DimensionMismatch {
                expected: self.factors,
                found: other.factors,
            });
        }
        Ok(())
    }

    /// `Σ m^{ij} ∂_i ⊗ ∂_j` acting on tensor slots `a` and `b`.
    pub fn apply_bimap(&self, m: &Matrix<Rational>, a: usize, b: usize) -> Result<Self> {
        let n = self.base.len();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.rows(),
            });
        }
        if a >= self.factors || b >= self.factors {
            return Err(Error::DimensionMismatch {
                expected: self.factors,
                found: a.max(b) + 1,
            });
        }
        let mut out = Poly::zero(self.poly.context());
        for i in 0..n {
            let di = self.poly.diff_unchecked(a * n + i);
            if di.is_zero() {
                continue;
            }
            for j in 0..n {
                let c = m.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let dij = di.diff_unchecked(b * n + j);
                out = &out + &dij.scale_rational(c);
            }
        }
        Ok(TensorSum {
            base: self.base.clone(),
            factors: self.factors,
            poly: out,
        })
    }

    /// Exchange tensor slots `a` and `b`.
    pub fn swap(&self, a: usize, b: usize) -> Result<Self> {
        let n = self.base.len();
        if a >= self.factors || b >= self.factors {
            return Err(Error::DimensionMismatch {
                expected: self.factors,
                found: a.max(b) + 1,
            });
        }
        let map: Vec<usize> = (0..self.factors * n)
            .map(|v| {
                let (k, i) = (v / n, v % n);
                let k = if k == a {
                    b
                } else if k == b {
                    a
                } else {
                    k
                };
                k * n + i
            })
            .collect();
        Ok(TensorSum {
            base: self.base.clone(),
            factors: self.factors,
            poly: self.poly.reindex(self.poly.context(), &map)?,
        })
    }

    /// Multiply all slots together.
    pub fn prod(&self) -> Poly<C> {
        let n = self.base.len();
        let map: Vec<usize> = (0..self.factors * n).map(|v| v % n).collect();
        self.poly
            .reindex(&self.base, &map)
            .expect("indices within base context")
    }

    /// Decompose a two-slot tensor as `Σ f_a ⊗ g_a`, grouped by the
    /// left-hand monomial.
    pub fn pairs(&self) -> Result<Vec<(Poly<C>, Poly<C>)>> {
        if self.factors != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.factors,
            });
        }
        let n = self.base.len();
        let mut grouped: std::collections::BTreeMap<Monomial, Poly<C>> = Default::default();
        for (m, c) in self.poly.terms() {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for &(v, e) in m.exponents() {
                if v < n {
                    left.push((v, e));
                } else {
                    right.push((v - n, e));
                }
            }
            let entry = grouped
                .entry(Monomial::from_pairs(left))
                .or_insert_with(|| Poly::zero(&self.base));
            *entry = &*entry + &Poly::monomial(&self.base, Monomial::from_pairs(right), c.clone());
        }
        Ok(grouped
            .into_iter()
            .rev()
            .map(|(l, g)| (Poly::monomial(&self.base, l, C::one()), g))
            .collect())
    }
}

/// Apply a bi-map (`π` or `γ`) to a two-slot tensor.
pub fn bimap_apply<C: Coeff>(m: &Matrix<Rational>, t: &TensorSum<C>) -> Result<TensorSum<C>> {
    if t.factors() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: t.factors(),
        });
    }
    t.apply_bimap(m, 0, 1)
}

fn check_dim<C: Coeff>(f: &Poly<C>, b: &BiVector) -> Result<()> {
    if f.context().len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: f.context().len(),
        });
    }
    Ok(())
}

/// `{f, g} = π^{ij} ∂_i f ∂_j g`.
pub fn bracket<C: Coeff>(f: &Poly<C>, g: &Poly<C>, b: &BiVector) -> Result<Poly<C>> {
    f.check_context(g)?;
    check_dim(f, b)?;
    let n = b.dim();
    let df: Vec<Poly<C>> = (0..n).map(|i| f.diff_unchecked(i)).collect();
    let dg: Vec<Poly<C>> = (0..n).map(|j| g.diff_unchecked(j)).collect();
    let mut out = Poly::zero(f.context());
    for (i, dfi) in df.iter().enumerate() {
        if dfi.is_zero() {
            continue;
        }
        for (j, dgj) in dg.iter().enumerate() {
            let c = b.entry(i, j);
            if c.is_zero() || dgj.is_zero() {
                continue;
            }
            out = &out + &(dfi * dgj).scale_rational(c);
        }
    }
    Ok(out)
}

/// Ideal generated by affine-linear polynomials.
#[derive(Clone, Debug)]
pub struct LinearIdeal<C: Coeff = Rational> {
    generators: Vec<Poly<C>>,
}

impl<C: Coeff> LinearIdeal<C> {
    pub fn new(generators: Vec<Poly<C>>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::UnsupportedIdeal("no generators".into()))?;
        for g in &generators {
            first.check_context(g)?;
            if g.degree().unwrap_or(0) > 1 {
                return Err(Error::UnsupportedIdeal(format!(
                    "generator `{g}` is not linear"
                )));
            }
        }
        let ideal = LinearIdeal { generators };
        if ideal.affine_matrix()?.rank() < ideal.generators.len() {
            return Err(Error::UnsupportedIdeal(
                "generators are linearly dependent".into(),
            ));
        }
        Ok(ideal)
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    /// Rows `[c_1 … c_n | c_0]` of the generators.
    fn affine_matrix(&self) -> Result<Matrix<C>> {
        let rows = self
            .generators
            .iter()
            .map(|g| {
                let (mut lin, c0) = g.linear_coefficients()?;
                lin.push(c0);
                Ok(lin)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    /// Whether the generators have no common zero (the ideal is everything).
    pub fn is_unit(&self) -> Result<bool> {
        let m = self.affine_matrix()?;
        let (_, pivots) = m.rref();
        Ok(pivots.last() == Some(&(m.cols() - 1)))
    }

    /// Membership of a polynomial of degree at most one.
    pub fn contains(&self, p: &Poly<C>) -> Result<bool> {
        if self.is_unit()? {
            return Ok(true);
        }
        if p.is_zero() {
            return Ok(true);
        }
        if p.degree().unwrap_or(0) > 1 {
            return Err(Error::UnsupportedIdeal(
                "membership is decided only for affine polynomials".into(),
            ));
        }
        // consistent affine generators: the ideal's affine elements are
        // exactly their linear span
        let m = self.affine_matrix()?;
        let (mut row, c0) = p.linear_coefficients()?;
        row.push(c0);
        let mut rows: Vec<Vec<C>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        rows.push(row);
        Ok(Matrix::from_rows(rows)?.rank() == m.rank())
    }
}

/// Whether the ideal generated by `generators` is closed under the bracket.
///
/// Decided for affine-linear generators (by linear algebra on their span)
/// and for a single generator of any degree (`{H, H} = 0` always).
pub fn is_coisotropic<C: Coeff>(generators: &[Poly<C>], b: &BiVector) -> Result<bool> {
    let first = generators
        .first()
        .ok_or_else(|| Error::UnsupportedIdeal("no generators".into()))?;
    check_dim(first, b)?;
    let linear = generators.iter().all(|g| g.degree().unwrap_or(0) <= 1);
    if !linear {
        if generators.len() == 1 {
            return Ok(bracket(first, first, b)?.is_zero());
        }
        return Err(Error::UnsupportedIdeal(
            "two or more generators with at least one nonlinear".into(),
        ));
    }
    let ideal = LinearIdeal::new(generators.to_vec())?;
    for (i, f) in generators.iter().enumerate() {
        for g in &generators[i + 1..] {
            if !ideal.contains(&bracket(f, g, b)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
