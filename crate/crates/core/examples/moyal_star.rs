// Moyal star products in the plane and in four dimensions.
use dquant::algebra::{rat, Matrix};
use dquant::cli::parse_expr;
use dquant::poisson::{BiVector, GaugePart};
use dquant::star::{commutator, gauge_map, star_poly, StarContext};
use dquant::{Context, HSeries};

fn main() {
    let ctx = Context::new(["x", "y"]);
    let sc = StarContext::new(BiVector::plane(), 4).unwrap();
    let p = |s: &str| parse_expr(s, &ctx).unwrap();
    for (f, g) in [("x", "y"), ("y", "x"), ("x^2", "y^2"), ("x^3 + y", "x*y")] {
        let s = star_poly(&p(f), &p(g), &sc).unwrap();
        println!("({f}) ⋆ ({g}) = {s}");
    }
    let c = commutator(
        &HSeries::from_poly(p("y"), 4),
        &HSeries::from_poly(p("x"), 4),
        &sc,
    )
    .unwrap();
    println!("[y, x]/ħ = {}", c.div_hbar().unwrap());

    let gamma = GaugePart::new(
        Matrix::from_rows(vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]]).unwrap(),
    )
    .unwrap();
    let f = HSeries::from_poly(p("x^2*y"), 4);
    println!("gauge_map(x^2*y) = {}", gauge_map(&f, &gamma, 4).unwrap());
}
