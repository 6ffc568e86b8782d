//! Benchmark host crate; see `benches/weights.rs`.
