//! Device models and Monte-Carlo noisy execution.
//!
//! Noise is stochastic Pauli insertion: after every gate, with probability
//! `p1` (one-qubit gates) or `p2` (two-qubit gates), a uniformly random
//! non-identity Pauli is applied to the gate's qubits. Each measured bit is
//! then flipped with probability `readout_flip`.
//!
//! The preset error rates are illustrative, not calibration data for any
//! real processor.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::sim::{draw_index, CountsTable, Pauli, StateVector, MAX_SIM_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NativeGate {
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CZ")]
    Cz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coupling {
    AllToAll,
    Edges(Vec<(usize, usize)>),
}

impl Serialize for Coupling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coupling::AllToAll => s.serialize_str("all_to_all"),
            Coupling::Edges(e) => {
                let pairs: Vec<[usize; 2]> = e.iter().map(|&(a, b)| [a, b]).collect();
                pairs.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for Coupling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Pairs(Vec<[usize; 2]>),
        }
        match Raw::deserialize(d)? {
            Raw::Name(s) if s == "all_to_all" => Ok(Coupling::AllToAll),
            Raw::Name(s) => Err(serde::de::Error::custom(format!("unknown coupling {s:?}"))),
            Raw::Pairs(p) if p.is_empty() => Ok(Coupling::AllToAll),
            Raw::Pairs(p) => Ok(Coupling::Edges(p.into_iter().map(|[a, b]| (a, b)).collect())),
        }
    }
}

/// A device: coupling graph, native entangler and noise rates.
/// An empty edge set means all-to-all connectivity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceModel {
    pub name: String,
    pub n_qubits: usize,
    pub coupling: Coupling,
    pub native_two_qubit: NativeGate,
    pub p1: f64,
    pub p2: f64,
    pub readout_flip: f64,
}

pub const PRESET_NAMES: [&str; 4] = ["IDEAL", "ION_FC", "SC_GRID20", "SC_GRID84"];

/// Nearest-neighbour lattice, row-major: qubit `r * cols + c`.
pub fn grid_edges(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let q = r * cols + c;
            if c + 1 < cols {
                edges.push((q, q + 1));
            }
            if r + 1 < rows {
                edges.push((q, q + cols));
            }
        }
    }
    edges
}

pub fn line_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

pub fn device_preset(name: &str) -> Result<DeviceModel> {
    let dev = match name {
        "IDEAL" => DeviceModel {
            name: name.into(),
            n_qubits: MAX_SIM_QUBITS,
            coupling: Coupling::AllToAll,
            native_two_qubit: NativeGate::Cnot,
            p1: 0.0,
            p2: 0.0,
            readout_flip: 0.0,
        },
        "ION_FC" => DeviceModel {
            name: name.into(),
            n_qubits: 25,
            coupling: Coupling::AllToAll,
            native_two_qubit: NativeGate::Cnot,
            p1: 5e-4,
            p2: 5e-3,
            readout_flip: 5e-3,
        },
        "SC_GRID20" => DeviceModel {
            name: name.into(),
            n_qubits: 20,
            coupling: Coupling::Edges(grid_edges(4, 5)),
            native_two_qubit: NativeGate::Cz,
            p1: 1e-3,
            p2: 1e-2,
            readout_flip: 2e-2,
        },
        "SC_GRID84" => DeviceModel {
            name: name.into(),
            n_qubits: 84,
            coupling: Coupling::Edges(grid_edges(7, 12)),
            native_two_qubit: NativeGate::Cz,
            p1: 1e-3,
            p2: 1e-2,
            readout_flip: 2e-2,
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(dev)
}

impl DeviceModel {
    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::Config(format!("device {}: n_qubits must be positive", self.name)));
        }
        for (label, p) in [("p1", self.p1), ("p2", self.p2), ("readout_flip", self.readout_flip)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("device {}: {label}={p} outside [0, 1]", self.name)));
            }
        }
        if let Coupling::Edges(edges) = &self.coupling {
            for &(a, b) in edges {
                if a == b || a >= self.n_qubits || b >= self.n_qubits {
                    return Err(Error::Config(format!("device {}: invalid edge ({a}, {b})", self.name)));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<DeviceModel> {
        let dev: DeviceModel = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        dev.validate()?;
        Ok(dev)
    }

    pub fn load(path: &Path) -> Result<DeviceModel> {
        DeviceModel::from_json(&std::fs::read_to_string(path)?)
    }

    /// Preset name, or else a path to a device JSON file.
    pub fn resolve(spec: &str) -> Result<DeviceModel> {
        match device_preset(spec) {
            Ok(d) => Ok(d),
            Err(Error::UnknownPreset(_)) if Path::new(spec).exists() => DeviceModel::load(Path::new(spec)),
            Err(e) => Err(e),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("device serializes")
    }

    pub fn is_all_to_all(&self) -> bool {
        matches!(self.coupling, Coupling::AllToAll)
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.readout_flip == 0.0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        match &self.coupling {
            Coupling::AllToAll => &[],
            Coupling::Edges(e) => e,
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b
            && match &self.coupling {
                Coupling::AllToAll => a < self.n_qubits && b < self.n_qubits,
                Coupling::Edges(e) => e.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b)),
            }
    }

    /// Sorted adjacency lists.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_qubits];
        match &self.coupling {
            Coupling::AllToAll => {
                for (a, list) in adj.iter_mut().enumerate() {
                    list.extend((0..self.n_qubits).filter(|&b| b != a));
                }
            }
            Coupling::Edges(edges) => {
                for &(a, b) in edges {
                    adj[a].push(b);
                    adj[b].push(a);
                }
                for list in &mut adj {
                    list.sort_unstable();
                    list.dedup();
                }
            }
        }
        adj
    }

    /// Same device with different noise rates.
    pub fn with_noise(&self, p1: f64, p2: f64, readout_flip: f64) -> DeviceModel {
        DeviceModel { p1, p2, readout_flip, ..self.clone() }
    }

    pub(crate) fn check_routed(&self, circuit: &Circuit) -> Result<()> {
        if circuit.n_qubits() > self.n_qubits {
            return Err(Error::WidthExceeded { n: circuit.n_qubits(), max: self.n_qubits });
        }
        if self.is_all_to_all() {
            return Ok(());
        }
        let adj = self.neighbours();
        for g in circuit.gates().iter().filter(|g| g.arity() == 2) {
            let (a, b) = (g.qubits()[0], g.qubits()[1]);
            if adj[a].binary_search(&b).is_err() {
                return Err(Error::UnroutedCircuit { device: self.name.clone(), a, b });
            }
        }
        Ok(())
    }
}

/// Qubits touched by any gate, plus `0..keep`, sorted.
pub(crate) fn active_qubits(circuit: &Circuit, keep: usize) -> Vec<usize> {
    let mut used = vec![false; circuit.n_qubits()];
    for q in used.iter_mut().take(keep) {
        *q = true;
    }
    for g in circuit.gates() {
        for &q in g.qubits() {
            used[q] = true;
        }
    }
    used.iter().enumerate().filter(|(_, &u)| u).map(|(q, _)| q).collect()
}

/// Circuit restricted to its active qubits, relabelled `0..m`.
pub(crate) fn compact(circuit: &Circuit, active: &[usize]) -> Result<Circuit> {
    let mut pos = vec![usize::MAX; circuit.n_qubits()];
    for (j, &q) in active.iter().enumerate() {
        pos[q] = j;
    }
    circuit.remapped(active.len().max(1), |q| pos[q])
}

pub(crate) fn expand_index(compact_index: usize, active: &[usize]) -> usize {
    active.iter().enumerate().fold(0, |acc, (j, &q)| acc | ((compact_index >> j & 1) << q))
}

#[derive(Clone, Copy, Debug)]
struct Fault {
    gate: usize,
    /// Pauli on each gate qubit, `None` for identity.
    paulis: [Option<Pauli>; 2],
}

fn pauli_from_code(code: u64) -> Option<Pauli> {
    match code {
        1 => Some(Pauli::X),
        2 => Some(Pauli::Y),
        3 => Some(Pauli::Z),
        _ => None,
    }
}

fn apply_fault(sv: &mut StateVector, gate: &Gate, fault: &Fault) {
    for (q, p) in gate.qubits().iter().zip(fault.paulis) {
        if let Some(p) = p {
            sv.apply_pauli(*q, p);
        }
    }
}

/// Executes `circuit` shot by shot under `dev`'s noise model.
///
/// Shot `i` draws from substream `(seed, i)`, in this order: one uniform
/// per gate whose error rate is positive (plus one Pauli index when it
/// fires), one uniform for the measurement, then one uniform per bit when
/// `readout_flip > 0`. With every rate at zero this is exactly
/// [`crate::sim::sample`] of the ideal state.
pub fn noisy_run(circuit: &Circuit, dev: &DeviceModel, shots: u64, seed: u64) -> Result<CountsTable> {
    dev.validate()?;
    dev.check_routed(circuit)?;
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be positive".into()));
    }
    let n = circuit.n_qubits();
    let active = active_qubits(circuit, 0);
    if active.len() > MAX_SIM_QUBITS {
        return Err(Error::WidthExceeded { n: active.len(), max: MAX_SIM_QUBITS });
    }
    let work = compact(circuit, &active)?;
    let gates = work.gates();

    // Fault patterns first; the stream then continues into measurement.
    let mut streams = Vec::with_capacity(shots as usize);
    let mut faults: Vec<Vec<Fault>> = Vec::with_capacity(shots as usize);
    for shot in 0..shots {
        let mut rng = Stream::substream(seed, shot);
        let mut list = Vec::new();
        for (gi, g) in gates.iter().enumerate() {
            let p = if g.arity() == 1 { dev.p1 } else { dev.p2 };
            if p > 0.0 && rng.uniform() < p {
                let paulis = if g.arity() == 1 {
                    [pauli_from_code(1 + rng.below(3)), None]
                } else {
                    let code = 1 + rng.below(15);
                    [pauli_from_code(code & 3), pauli_from_code(code >> 2)]
                };
                list.push(Fault { gate: gi, paulis });
            }
        }
        faults.push(list);
        streams.push(rng);
    }

    // Walk one clean state forward; faulty shots branch off it at their
    // first fault.
    let mut order: Vec<usize> = (0..shots as usize).filter(|&s| !faults[s].is_empty()).collect();
    order.sort_by_key(|&s| (faults[s][0].gate, s));
    let mut outcome = vec![0usize; shots as usize];
    let mut clean = StateVector::zero(work.n_qubits())?;
    let mut applied = 0;
    for &s in &order {
        let first = faults[s][0].gate;
        while applied <= first {
            clean.apply(gates[applied].kind, gates[applied].qubits());
            applied += 1;
        }
        let mut sv = clean.clone();
        let mut pending = faults[s].iter().peekable();
        for gi in first..gates.len() {
            if gi > first {
                sv.apply(gates[gi].kind, gates[gi].qubits());
            }
            while let Some(f) = pending.next_if(|f| f.gate == gi) {
                apply_fault(&mut sv, &gates[gi], f);
            }
        }
        outcome[s] = measure_once(&sv, streams[s].uniform());
    }
    while applied < gates.len() {
        clean.apply(gates[applied].kind, gates[applied].qubits());
        applied += 1;
    }
    let cdf = clean.cdf();

    let mut hist: BTreeMap<String, u64> = BTreeMap::new();
    for shot in 0..shots as usize {
        let rng = &mut streams[shot];
        let compact_index = if faults[shot].is_empty() { draw_index(&cdf, rng.uniform()) } else { outcome[shot] };
        let mut bits = vec![false; n];
        for (j, &q) in active.iter().enumerate() {
            bits[q] = compact_index >> j & 1 == 1;
        }
        if dev.readout_flip > 0.0 {
            for b in bits.iter_mut() {
                if rng.uniform() < dev.readout_flip {
                    *b = !*b;
                }
            }
        }
        let key: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        *hist.entry(key).or_insert(0) += 1;
    }
    CountsTable::new(n, shots, hist)
}

fn measure_once(sv: &StateVector, u: f64) -> usize {
    let target = u * sv.norm_sqr();
    let mut acc = 0.0;
    let amps = sv.amplitudes();
    for (i, a) in amps.iter().enumerate() {
        acc += a.norm_sqr();
        if acc > target {
            return i;
        }
    }
    amps.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run, sample};

    fn bell() -> Circuit {
        let mut c = Circuit::new(2);
        c.h(0).cnot(0, 1);
        c
    }

    #[test]
    fn presets() {
        let ideal = device_preset("IDEAL").unwrap();
        assert!(ideal.is_all_to_all() && ideal.is_noiseless());
        let g20 = device_preset("SC_GRID20").unwrap();
        assert_eq!(g20.n_qubits, 20);
        assert_eq!(g20.edges().len(), 31);
        assert_eq!(g20.native_two_qubit, NativeGate::Cz);
        assert_eq!(device_preset("SC_GRID84").unwrap().edges().len(), 7 * 11 + 12 * 6);
        let ion = device_preset("ION_FC").unwrap();
        assert!(ion.is_all_to_all() && ion.edges().is_empty());
        assert!(matches!(device_preset("nope"), Err(Error::UnknownPreset(_))));
        for name in PRESET_NAMES {
            device_preset(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn device_json_schema() {
        let text = r#"{"name":"line4","n_qubits":4,"coupling":[[0,1],[1,2],[2,3]],
            "native_two_qubit":"CZ","p1":0.001,"p2":0.01,"readout_flip":0.02}"#;
        let dev = DeviceModel::from_json(text).unwrap();
        assert_eq!(dev.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert!(dev.adjacent(2, 1) && !dev.adjacent(0, 2));
        let back = DeviceModel::from_json(&dev.to_json()).unwrap();
        assert_eq!(back, dev);

        let fc = r#"{"name":"fc","n_qubits":3,"coupling":"all_to_all","native_two_qubit":"CNOT","p1":0,"p2":0,"readout_flip":0}"#;
        assert!(DeviceModel::from_json(fc).unwrap().is_all_to_all());

        let bad_p = text.replace("0.02", "1.5");
        assert!(DeviceModel::from_json(&bad_p).is_err());
        let self_loop = text.replace("[2,3]", "[3,3]");
        assert!(DeviceModel::from_json(&self_loop).is_err());
        let out_of_range = text.replace("[2,3]", "[2,4]");
        assert!(DeviceModel::from_json(&out_of_range).is_err());
    }

    #[test]
    fn zero_noise_equals_ideal_sampling() {
        let mut c = Circuit::new(3);
        c.h(0).cnot(0, 1).ry(2, 0.7).cz(1, 2);
        let ideal = device_preset("IDEAL").unwrap();
        assert_eq!(noisy_run(&c, &ideal, 2000, 17).unwrap(), sample(&run(&c).unwrap(), 2000, 17));
    }

    #[test]
    fn unrouted_gate_rejected() {
        let dev = DeviceModel {
            name: "line".into(),
            n_qubits: 3,
            coupling: Coupling::Edges(line_edges(3)),
            native_two_qubit: NativeGate::Cnot,
            p1: 0.0,
            p2: 0.0,
            readout_flip: 0.0,
        };
        let mut c = Circuit::new(3);
        c.cnot(0, 2);
        assert!(matches!(noisy_run(&c, &dev, 10, 1), Err(Error::UnroutedCircuit { a: 0, b: 2, .. })));
    }

    #[test]
    fn bell_with_two_qubit_depolarizing() {
        let dev = device_preset("IDEAL").unwrap().with_noise(0.0, 0.05, 0.0);
        let counts = noisy_run(&bell(), &dev, 100_000, 3).unwrap();
        let pop = (counts.get("00") + counts.get("11")) as f64 / 1e5;
        assert!((0.93..=0.99).contains(&pop), "pop={pop}");
        // Only the 8 Paulis flipping exactly one bit (X or Y on one qubit,
        // I or Z on the other) leave 00/11: 1 - 0.05 * 8/15.
        let analytic = 1.0 - 0.05 * 8.0 / 15.0;
        assert!((pop - analytic).abs() < 0.003, "pop={pop}");
    }

    #[test]
    fn readout_flip_rate() {
        let dev = device_preset("IDEAL").unwrap().with_noise(0.0, 0.0, 0.1);
        let counts = noisy_run(&Circuit::new(1), &dev, 100_000, 8).unwrap();
        let p1 = counts.frequency("1");
        assert!((0.09..=0.11).contains(&p1), "p1={p1}");
    }

    #[test]
    fn counts_conserved_and_deterministic() {
        let dev = device_preset("ION_FC").unwrap().with_noise(0.05, 0.1, 0.05);
        let mut c = Circuit::new(4);
        c.h(0).cnot(0, 1).cnot(1, 2).cnot(2, 3).rx(3, 0.2);
        let a = noisy_run(&c, &dev, 777, 5).unwrap();
        assert_eq!(a.iter().map(|(_, v)| v).sum::<u64>(), 777);
        assert_eq!(a, noisy_run(&c, &dev, 777, 5).unwrap());
    }

    #[test]
    fn inactive_qubits_stay_zero() {
        let dev = device_preset("IDEAL").unwrap();
        let mut c = Circuit::new(6);
        c.x(4);
        let counts = noisy_run(&c, &dev, 50, 1).unwrap();
        assert_eq!(counts.get("000010"), 50);
    }

    /// Pearson chi-square two-sample homogeneity test against the ideal
    /// sampler; 1% critical values for df up to 7.
    #[test]
    fn ideal_device_matches_ideal_distribution() {
        let mut c = Circuit::new(3);
        c.h(0).ry(1, 1.0).cnot(0, 2).rz(2, 0.4).h(2);
        let ideal = device_preset("IDEAL").unwrap();
        let a = noisy_run(&c, &ideal, 10_000, 101).unwrap();
        let b = sample(&run(&c).unwrap(), 10_000, 202);
        let mut chi2 = 0.0;
        let mut df = 0i32 - 1;
        for i in 0..8 {
            let key = crate::circuit::index_to_bitstring(i, 3);
            let (x, y) = (a.get(&key) as f64, b.get(&key) as f64);
            if x + y > 0.0 {
                chi2 += (x - y).powi(2) / (x + y);
                df += 1;
            }
        }
        let crit = [6.63, 9.21, 11.34, 13.28, 15.09, 16.81, 18.48][(df - 1) as usize];
        assert!(chi2 < crit, "chi2={chi2} df={df}");
    }
}
