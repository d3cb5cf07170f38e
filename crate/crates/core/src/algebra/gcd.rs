//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences. Used only to keep rational functions in lowest terms.

use std::collections::BTreeMap;

use super::coeff::Rational;
use super::poly::{Monomial, Poly};

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.context());
    }
    let var = match main_variable(a, b) {
        Some(v) => v,
        None => return Poly::one(a.context()),
    };
    let ca = content(a, var);
    let cb = content(b, var);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd(&ca, &cb);
    let pg = primitive_prs(pa, pb, var);
    (&cg * &pg).monic()
}

/// Highest-index variable occurring in either operand.
fn main_variable(a: &Poly<Rational>, b: &Poly<Rational>) -> Option<usize> {
    a.terms()
        .chain(b.terms())
        .filter_map(|(m, _)| m.max_index())
        .max()
}

fn content(p: &Poly<Rational>, var: usize) -> Poly<Rational> {
    let mut acc = Poly::zero(p.context());
    for c in p.coefficients_in(var).values() {
        acc = gcd(&acc, c);
        if acc.is_constant() {
            return Poly::one(p.context());
        }
    }
    acc
}

fn primitive_part(p: &Poly<Rational>, var: usize) -> Poly<Rational> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, var);
    p.div_exact(&c).expect("content divides")
}

fn lead_in(coeffs: &BTreeMap<u32, Poly<Rational>>) -> (u32, Poly<Rational>) {
    let (&d, c) = coeffs.iter().next_back().expect("nonzero polynomial");
    (d, c.clone())
}

/// Pseudo-remainder of `a` by `b` as polynomials in `var`.
fn pseudo_rem(a: &Poly<Rational>, b: &Poly<Rational>, var: usize) -> Poly<Rational> {
    let (db, lb) = lead_in(&b.coefficients_in(var));
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = lead_in(&r.coefficients_in(var));
        if dr < db {
            return r;
        }
        let shift = Monomial::from_pairs(vec![(var, dr - db)]);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
}

fn primitive_prs(a: Poly<Rational>, b: Poly<Rational>, var: usize) -> Poly<Rational> {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    while !b.is_zero() {
        if b.degree_in(var) == 0 {
            // b is a nonzero element free of `var`; a and b are primitive
            return Poly::one(a.context());
        }
        let r = pseudo_rem(&a, &b, var);
        a = b;
        b = primitive_part(&r, var);
    }
    primitive_part(&a, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Context;

    #[test]
    fn gcd_of_products() {
        let ctx = Context::new(["a", "b", "c"]);
        let a = Poly::<Rational>::var(&ctx, 0).unwrap();
        let b = Poly::<Rational>::var(&ctx, 1).unwrap();
        let c = Poly::<Rational>::var(&ctx, 2).unwrap();
        let common = &(&a * &b) - &c;
        let p = &common * &(&a + &c);
        let q = &common * &(&b.pow(2) - &a);
        assert_eq!(gcd(&p, &q), common.monic());
        assert_eq!(gcd(&(&a + &b), &(&a - &b)), Poly::one(&ctx));
        assert_eq!(gcd(&p, &Poly::zero(&ctx)), p.monic());
    }

    #[test]
    fn gcd_with_constants() {
        let ctx = Context::new(["a"]);
        let a = Poly::<Rational>::var(&ctx, 0).unwrap();
        let two = Poly::from_int(&ctx, 2);
        assert_eq!(gcd(&(&two * &a), &a.pow(3)), a);
        assert_eq!(gcd(&two, &a), Poly::one(&ctx));
    }
}
