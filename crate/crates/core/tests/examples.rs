macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(lattices, "lattices.rs");
example!(monoid_faces, "monoid_faces.rs");
example!(curves, "curves.rs");
example!(jacobian, "jacobian.rs");
example!(alignment, "alignment.rs");
example!(strata, "strata.rs");
example!(models, "models.rs");
example!(documents, "documents.rs");
