//! Benchmarks for the classification pipeline.
