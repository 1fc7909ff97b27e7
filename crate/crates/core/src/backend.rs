//! Compile-and-execute pipeline: route, decompose to the native gate, run,
//! and report outcomes in logical qubit order.

use std::collections::BTreeMap;

use crate::circuit::Circuit;
use crate::error::Result;
use crate::noise::{active_qubits, compact, expand_index, noisy_run, DeviceModel};
use crate::router::{decompose_native, route, RoutedCircuit};
use crate::sim::{run, CountsTable};

#[derive(Clone, Debug)]
pub struct Compiled {
    pub logical_qubits: usize,
    pub routed: RoutedCircuit,
    /// Routed circuit rewritten into the device's native entangler.
    pub native: Circuit,
}

impl Compiled {
    pub fn depth(&self) -> usize {
        self.native.depth()
    }

    fn logical_bits(&self, physical: &str) -> String {
        let bytes = physical.as_bytes();
        (0..self.logical_qubits).map(|q| bytes[self.routed.physical(q)] as char).collect()
    }

    /// Physical basis index to logical basis index.
    fn to_logical(&self, physical: usize) -> usize {
        (0..self.logical_qubits).fold(0, |acc, q| acc | ((physical >> self.routed.physical(q) & 1) << q))
    }
}

pub fn compile(circuit: &Circuit, dev: &DeviceModel) -> Result<Compiled> {
    let routed = route(circuit, dev)?;
    let native = decompose_native(&routed.circuit, dev.native_two_qubit);
    Ok(Compiled { logical_qubits: circuit.n_qubits(), routed, native })
}

/// Shot-based execution on `dev`. Bitstrings are in logical order.
pub fn execute(compiled: &Compiled, dev: &DeviceModel, shots: u64, seed: u64) -> Result<CountsTable> {
    let physical = noisy_run(&compiled.native, dev, shots, seed)?;
    let mut hist = BTreeMap::new();
    for (bits, c) in physical.iter() {
        *hist.entry(compiled.logical_bits(bits)).or_insert(0u64) += c;
    }
    CountsTable::new(compiled.logical_qubits, shots, hist)
}

/// Noise-free outcome distribution of the compiled circuit, indexed by
/// logical basis state.
pub fn exact_distribution(compiled: &Compiled) -> Result<Vec<f64>> {
    let active = active_qubits(&compiled.native, 0);
    let sv = run(&compact(&compiled.native, &active)?)?;
    let mut probs = vec![0.0; 1 << compiled.logical_qubits];
    for (i, p) in sv.probabilities().into_iter().enumerate() {
        if p > 0.0 {
            probs[compiled.to_logical(expand_index(i, &active))] += p;
        }
    }
    Ok(probs)
}
