//! Benchmark-only crate; the interesting code lives in `lbox-core`.
//! See `benches/hot_paths.rs`.
