//! Criterion benchmarks for the exact engine live in `benches/exact.rs`.
