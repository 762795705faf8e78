//! Criterion benchmarks for `balanced-codes`; see `benches/`.
