//! Gate-level quantum circuit simulation and cross-architecture benchmarking.
//!
//! The crate is layered bottom-up:
//!
//! - [`circuit`]: the gate-level IR, depth and gate-count analysis, dense
//!   unitaries for small circuits, and a line-oriented text format.
//! - [`sim`]: in-place state-vector simulation and seeded shot sampling.
//! - [`noise`]: device models (coupling graph, native entangler, error
//!   rates) and Monte-Carlo Pauli-trajectory execution.
//! - [`router`]: SWAP insertion onto constrained coupling graphs and
//!   native-gate decomposition.
//! - [`algos`]: Bell/CHSH, GHZ, QFT, Grover and QAOA generators with their
//!   metric estimators.
//! - [`harness`]: config-driven experiment runs, JSON-lines archives, and
//!   CSV tables and plot series.
//!
//! ```
//! use qubench::algos::bell::make_bell;
//! use qubench::sim::run;
//!
//! let state = run(&make_bell()).unwrap();
//! assert!((state.probability("00").unwrap() - 0.5).abs() < 1e-12);
//! assert!((state.probability("11").unwrap() - 0.5).abs() < 1e-12);
//! ```

pub mod algos;
pub mod backend;
pub mod circuit;
pub mod error;
pub mod harness;
pub mod noise;
pub mod rng;
pub mod router;
pub mod sim;
pub mod stats;

pub use circuit::{Circuit, Gate, GateKind};
pub use error::{Error, Result};
pub use noise::{device_preset, DeviceModel};
pub use sim::{CountsTable, StateVector};
