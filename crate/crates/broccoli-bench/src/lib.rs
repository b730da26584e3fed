//! Benchmark-only crate; see `benches/synthesis.rs`. Run with
//! `cargo bench -p broccoli-bench`.
