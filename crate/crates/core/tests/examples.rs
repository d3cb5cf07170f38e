// Every example must run to completion.
macro_rules! run_example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
            #[test]
            fn runs() {
                main();
            }
        }
    };
}

run_example!(moyal_star);
run_example!(weyl_representation);
run_example!(conic_wkb);
run_example!(airy_lambda);
run_example!(reduction_4d);
run_example!(gaussian_central_identity);
run_example!(parse_expressions);
