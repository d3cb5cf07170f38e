// Formal Gaussian integrals through the central identity.
use dquant::algebra::{rat, Coeff, Matrix, RatFunc};
use dquant::cli::parse_expr;
use dquant::reduction::central_identity;
use dquant::{Context, Poly};

fn main() {
    let k = Matrix::from_rows(vec![
        vec![RatFunc::constant(rat(2, 1)), RatFunc::constant(rat(1, 1))],
        vec![RatFunc::constant(rat(1, 1)), RatFunc::constant(rat(3, 1))],
    ])
    .unwrap();
    let ctx = Context::new(["j1", "j2"]);
    // V = ∂_{j1}^3 / 6
    let v: Poly = parse_expr("j1^3/6", &ctx).unwrap();
    let v = v.map_coeffs(|c| RatFunc::constant(c.clone()));
    let ci = central_identity(&k, &v, 2).unwrap();
    println!("(K')^-1 = {}", ci.inverse);
    println!("½ J·(K')^-1·J = {}", ci.exponent());
    println!("prefactor to second order in V: {}", ci.prefactor);
    println!(
        "prefactor at J = 0: {}",
        ci.prefactor.constant_term().as_rational().unwrap()
    );
}
