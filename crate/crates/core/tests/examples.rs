// Runs the quick examples so they stay in step with the library.
// `big_example` and `oracle_check` are exercised by the acceptance suite.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::main();
        }
    };
}

example!(generic_diagram);
example!(pruning);
example!(sibling_exclusion);
example!(lifting);
example!(worlds);
example!(staged);
example!(json_report);
