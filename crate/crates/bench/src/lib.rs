//! Criterion benchmarks for ramond-core; see `benches/`.
