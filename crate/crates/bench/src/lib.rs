//! Benchmarks for the qcluster engine. See `benches/engine.rs`.
