macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(decide_word, "decide_word.rs");
example!(prefix_code_tables, "prefix_code_tables.rs");
example!(lz_recognizer, "lz_recognizer.rs");
example!(narrow_point, "narrow_point.rs");
example!(free_monoid, "free_monoid.rs");
example!(custom_generating_set, "custom_generating_set.rs");
example!(quadratic_scaling, "quadratic_scaling.rs");
