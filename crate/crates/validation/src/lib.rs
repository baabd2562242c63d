//! Home of the `acceptance` test target, which checks the headline results
//! end to end. Run it with `cargo test -p dynlab-validation --test acceptance`.
