// Symmetric-ordering quantisation of the conic and its action on series.
use dquant::algebra::{rat, XSeries};
use dquant::cli::parse_expr;
use dquant::weyl::{phi, weyl_apply, Polarization};
use dquant::{Context, Poly};

fn main() {
    let ctx = Context::new(["x", "y"]);
    let pol = Polarization::plane(&ctx).unwrap();
    let h: Poly = parse_expr("-y + x^2 + 2*x*y + y^2", &ctx).unwrap();
    let op = phi(&h, &pol, 4).unwrap();
    println!("φ(H) = {op}");
    let one = XSeries::constant(pol.positions(), rat(1, 1), 6);
    for (k, part) in weyl_apply(&op, &one).unwrap().iter().enumerate() {
        println!("ħ^{k} part of φ(H)·1: {}", part.to_poly());
    }
    let xy = phi(&parse_expr("x*y", &ctx).unwrap(), &pol, 4).unwrap();
    println!("φ(x*y) = {xy}");
}
