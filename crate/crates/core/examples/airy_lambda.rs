// Solving H ⋆ λ(H) = 0 for the conic by the three-term recurrence.
use dquant::algebra::rat;
use dquant::cli::parse_expr;
use dquant::poisson::BiVector;
use dquant::wkb::{airy_constant, lambda_residual, lambda_solve, plane_star, CurveIdeal};
use dquant::Context;

fn main() {
    let ctx = Context::new(["x", "y"]);
    let h = parse_expr("-y + x^2 + 2*x*y + y^2", &ctx).unwrap();
    println!("c = {}", airy_constant(&h, &BiVector::plane()).unwrap());
    let curve = CurveIdeal::new(h, vec![]).unwrap();
    let sc = plane_star(2).unwrap();
    let lam = lambda_solve(rat(1, 1), rat(1, 1), 9).unwrap();
    for (n, l) in lam.coefficients().iter().enumerate() {
        println!("λ_{n} = {l}");
    }
    println!("residual: {}", lambda_residual(&curve, &lam, &sc).unwrap());
    let broken = lam.with_coefficient(4, rat(0, 1));
    println!(
        "after zeroing λ_4: {}",
        lambda_residual(&curve, &broken, &sc).unwrap()
    );
}
