//! Benchmark circuit generators and their metric estimators.

pub mod bell;
pub mod ghz;
pub mod graph;
pub mod grover;
pub mod optimize;
pub mod qaoa;
pub mod qft;
mod result;

pub use result::{Algorithm, BenchmarkResult};
