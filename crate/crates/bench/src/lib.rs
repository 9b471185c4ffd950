//! Synthetic data and wall-clock benchmarks for the knowledge graph.

pub mod fetch;
pub mod synthetic;
pub mod table2;
pub mod timing;
