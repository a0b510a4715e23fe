//! Benchmarks for the nw2d workbench live in `benches/`; run them with
//! `cargo bench -p nw2d-bench`.
