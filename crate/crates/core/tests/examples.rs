macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(cofibrations, cofibrations_example_runs, "cofibrations.rs");
example!(frontiers, frontiers_example_runs, "frontiers.rs");
example!(check_normal_form, check_normal_form_example_runs, "check_normal_form.rs");
example!(stabilize, stabilize_example_runs, "stabilize.rs");
example!(decay_and_equality, decay_and_equality_example_runs, "decay_and_equality.rs");
example!(substitution, substitution_example_runs, "substitution.rs");
example!(splits, splits_example_runs, "splits.rs");
example!(conversion, conversion_example_runs, "conversion.rs");
example!(check_files, check_files_example_runs, "check_files.rs");
example!(round_trip, round_trip_example_runs, "round_trip.rs");
