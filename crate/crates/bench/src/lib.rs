//! Criterion benchmarks for the `phasealign` crate; see `benches/`.
