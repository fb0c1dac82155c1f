//! Criterion benchmarks for junction-core; see `benches/`.
