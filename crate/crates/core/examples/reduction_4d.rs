// Reducing a four-dimensional Lagrangian wavefunction along a hyperplane,
// symbolically and at a sample point.
use dquant::algebra::rat;
use dquant::reduction::{reduce_wavefunction, Ks4d};

fn show(ex: &Ks4d) {
    let r = reduce_wavefunction(&ex.coisotropic().unwrap(), &ex.lagrangian().unwrap()).unwrap();
    println!("chart: {}", r.extension.chart());
    println!("ζ = {}, ξ = {}", r.extension.zeta()[0], r.extension.xi()[0]);
    println!("ψ_G = {}", r.psi_g);
    println!("gaussian route:    {}", r.gaussian);
    println!("elimination route: {}", r.eliminated);
    println!("agree: {}\n", r.agree);
}

fn main() {
    show(&Ks4d::symbolic());
    let one = rat(1, 1);
    let zero = rat(0, 1);
    show(&Ks4d::numeric([
        one.clone(),
        one.clone(),
        one.clone(),
        one,
        zero.clone(),
        zero.clone(),
        zero,
    ]));
}
