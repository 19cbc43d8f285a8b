//! Criterion benchmarks for the hamres kernels; see `benches/kernels.rs`.
