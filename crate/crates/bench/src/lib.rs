//! Criterion benchmarks for `polyknot`; see `benches/`.
