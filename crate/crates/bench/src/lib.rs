//! Criterion benchmarks for the contextus kernels live in `benches/kernels.rs`.
