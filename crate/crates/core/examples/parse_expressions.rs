// The expression grammar used by the command line.
use dquant::cli::parse_expr;
use dquant::Context;

fn main() {
    let ctx = Context::new(["x", "y"]);
    for text in [
        "-y + x^2 + 2*x*y + y^2",
        "0",
        "1/2*x^2",
        "(x - y)^3",
        "2 x",
        "x + z",
        "x/y",
    ] {
        match parse_expr(text, &ctx) {
            Ok(p) => println!("{text:>24} -> {p}"),
            Err(e) => println!("{text:>24} -> error: {e}"),
        }
    }
}
