macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            #![allow(dead_code)]
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));

            #[test]
            fn runs() {
                run().expect(concat!($file, " should run"));
            }
        }
    };
}

example!(solve_exact, "solve_exact.rs");
example!(two_sat, "two_sat.rs");
example!(one_plane, "one_plane.rs");
example!(reduction, "reduction.rs");
example!(generator, "generator.rs");
example!(verify, "verify.rs");
