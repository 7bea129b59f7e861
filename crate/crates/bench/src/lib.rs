//! Criterion benchmarks for the optimizers and objectives live in `benches/`.
