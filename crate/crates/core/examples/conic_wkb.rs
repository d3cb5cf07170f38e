// WKB expansion of the conic y = x^2 + 2xy + y^2.
use dquant::algebra::rat;
use dquant::cli::parse_expr;
use dquant::wkb::{wkb_solve, CurveIdeal};
use dquant::Context;

fn main() {
    let ctx = Context::new(["x", "y"]);
    let h = parse_expr("-y + x^2 + 2*x*y + y^2", &ctx).unwrap();
    let curve = CurveIdeal::new(h, vec![rat(1, 1)]).unwrap();
    let sol = wkb_solve(&curve, 2, 10).unwrap();
    for (g, u) in sol.u().iter().enumerate() {
        let c: Vec<String> = u
            .univariate_coeffs()
            .unwrap()
            .iter()
            .map(|r| r.to_string())
            .collect();
        println!("u_{g}: {}", c.join(", "));
    }
    println!("S_0 = {}", sol.s()[0].to_poly());
    let clean = sol.residual().unwrap().iter().all(|r| r.is_zero());
    println!("residual vanishes: {clean}");
}
