//! Criterion benchmarks for the algebra kernels live in `benches/algebra.rs`.
