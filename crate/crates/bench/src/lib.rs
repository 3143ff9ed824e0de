//! Criterion benchmarks for `wbm-core`; see `benches/wbm.rs`.
