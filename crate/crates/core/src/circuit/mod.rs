//! Gate-level circuit representation.
//!
//! Qubit `q` is bit `q` of a basis-state index (little-endian), and a
//! bitstring renders qubit 0 first. The gate set is closed under adjoint.

mod text;
mod unitary;

pub use text::{parse_circuit, write_circuit};
pub use unitary::{gate_matrix, to_unitary, MAX_UNITARY_QUBITS};

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    /// `diag(1, 1, 1, e^{iθ})`. The QFT rotation `R_k` is `CPhase(2π / 2^k)`.
    CPhase(f64),
    /// Control first, target second.
    Cnot,
    Cz,
    Swap,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::Rx(_)
            | GateKind::Ry(_)
            | GateKind::Rz(_) => 1,
            GateKind::CPhase(_) | GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
        }
    }

    pub fn angle(self) -> Option<f64> {
        match self {
            GateKind::Rx(t) | GateKind::Ry(t) | GateKind::Rz(t) | GateKind::CPhase(t) => Some(t),
            _ => None,
        }
    }

    pub fn adjoint(self) -> GateKind {
        match self {
            GateKind::Rx(t) => GateKind::Rx(-t),
            GateKind::Ry(t) => GateKind::Ry(-t),
            GateKind::Rz(t) => GateKind::Rz(-t),
            GateKind::CPhase(t) => GateKind::CPhase(-t),
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Rx(_) => "RX",
            GateKind::Ry(_) => "RY",
            GateKind::Rz(_) => "RZ",
            GateKind::CPhase(_) => "CPHASE",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
        }
    }

    /// Builds a kind from its name and optional angle.
    pub fn from_name(name: &str, angle: Option<f64>) -> Result<GateKind> {
        let upper = name.to_ascii_uppercase();
        let kind = match (upper.as_str(), angle) {
            ("H", None) => GateKind::H,
            ("X", None) => GateKind::X,
            ("Y", None) => GateKind::Y,
            ("Z", None) => GateKind::Z,
            ("RX", Some(t)) => GateKind::Rx(t),
            ("RY", Some(t)) => GateKind::Ry(t),
            ("RZ", Some(t)) => GateKind::Rz(t),
            ("CPHASE", Some(t)) => GateKind::CPhase(t),
            ("CNOT" | "CX", None) => GateKind::Cnot,
            ("CZ", None) => GateKind::Cz,
            ("SWAP", None) => GateKind::Swap,
            ("RX" | "RY" | "RZ" | "CPHASE", None) => {
                return Err(Error::InvalidGate(format!("{upper} requires an angle")))
            }
            (_, Some(_)) if ["H", "X", "Y", "Z", "CNOT", "CX", "CZ", "SWAP"].contains(&upper.as_str()) => {
                return Err(Error::InvalidGate(format!("{upper} takes no angle")))
            }
            _ => return Err(Error::InvalidGate(format!("unknown gate {name:?}"))),
        };
        Ok(kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    qubits: [usize; 2],
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} expects {} qubit(s), got {}",
                kind.name(),
                kind.arity(),
                qubits.len()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidGate(format!(
                "{} on repeated qubit {}",
                kind.name(),
                qubits[0]
            )));
        }
        let mut q = [0; 2];
        q[..qubits.len()].copy_from_slice(qubits);
        Ok(Gate { kind, qubits: q })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn adjoint(&self) -> Gate {
        Gate { kind: self.kind.adjoint(), qubits: self.qubits }
    }

    /// Same gate with every qubit index sent through `map`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        let mut g = *self;
        for q in g.qubits.iter_mut().take(self.arity()) {
            *q = map(*q);
        }
        g
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.qubits().iter().map(|q| q.to_string()).collect();
        write!(f, "{} {}", self.kind.name(), qs.join(","))?;
        if let Some(t) = self.kind.angle() {
            write!(f, " angle={t:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateCounts {
    pub one_qubit: usize,
    pub two_qubit: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// # Panics
    /// If `n_qubits` is zero.
    pub fn new(n_qubits: usize) -> Circuit {
        assert!(n_qubits > 0, "a circuit needs at least one qubit");
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push_gate(&mut self, gate: Gate) -> Result<&mut Self> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::InvalidGate(format!(
                "{} references qubit {q} on a {}-qubit circuit",
                gate.kind.name(),
                self.n_qubits
            )));
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn try_push(&mut self, kind: GateKind, qubits: &[usize]) -> Result<&mut Self> {
        self.push_gate(Gate::new(kind, qubits)?)
    }

    /// Appends a gate, panicking on an invalid qubit list. Meant for generators
    /// whose indices are correct by construction.
    pub fn push(&mut self, kind: GateKind, qubits: &[usize]) -> &mut Self {
        if let Err(e) = self.try_push(kind, qubits) {
            panic!("{e}");
        }
        self
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.push(GateKind::H, &[q])
    }
    pub fn x(&mut self, q: usize) -> &mut Self {
        self.push(GateKind::X, &[q])
    }
    pub fn y(&mut self, q: usize) -> &mut Self {
        self.push(GateKind::Y, &[q])
    }
    pub fn z(&mut self, q: usize) -> &mut Self {
        self.push(GateKind::Z, &[q])
    }
    pub fn rx(&mut self, q: usize, theta: f64) -> &mut Self {
        self.push(GateKind::Rx(theta), &[q])
    }
    pub fn ry(&mut self, q: usize, theta: f64) -> &mut Self {
        self.push(GateKind::Ry(theta), &[q])
    }
    pub fn rz(&mut self, q: usize, theta: f64) -> &mut Self {
        self.push(GateKind::Rz(theta), &[q])
    }
    pub fn cphase(&mut self, a: usize, b: usize, theta: f64) -> &mut Self {
        self.push(GateKind::CPhase(theta), &[a, b])
    }
    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(GateKind::Cnot, &[control, target])
    }
    pub fn cz(&mut self, a: usize, b: usize) -> &mut Self {
        self.push(GateKind::Cz, &[a, b])
    }
    pub fn swap(&mut self, a: usize, b: usize) -> &mut Self {
        self.push(GateKind::Swap, &[a, b])
    }

    /// Appends all gates of `other`, which must have the same width.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::WidthMismatch(self.n_qubits, other.n_qubits));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(self)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    /// Longest chain of the shared-qubit conflict DAG, computed by greedy
    /// as-soon-as-possible layering.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let layer = g.qubits().iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in g.qubits() {
                level[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn gate_counts(&self) -> GateCounts {
        let two_qubit = self.gates.iter().filter(|g| g.arity() == 2).count();
        let total = self.gates.len();
        GateCounts { one_qubit: total - two_qubit, two_qubit, total }
    }

    pub fn count_kind(&self, pred: impl Fn(GateKind) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g.kind)).count()
    }

    /// Rebuilds the circuit on `n_qubits` wires with qubits relabelled by `map`.
    pub fn remapped(&self, n_qubits: usize, map: impl Fn(usize) -> usize) -> Result<Circuit> {
        let mut out = Circuit::new(n_qubits);
        for g in &self.gates {
            out.push_gate(g.remapped(&map))?;
        }
        Ok(out)
    }
}

/// Rotation angle of the QFT's `R_k` gate.
pub fn rk_angle(k: u32) -> f64 {
    2.0 * PI / 2f64.powi(k as i32)
}

/// Little-endian bitstring of a basis index: character `q` is qubit `q`.
pub fn index_to_bitstring(index: usize, n: usize) -> String {
    (0..n).map(|q| if index >> q & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse of [`index_to_bitstring`].
pub fn bitstring_to_index(bits: &str) -> Result<usize> {
    if bits.len() >= usize::BITS as usize {
        return Err(Error::WidthExceeded { n: bits.len(), max: usize::BITS as usize - 1 });
    }
    let mut idx = 0usize;
    for (q, c) in bits.chars().enumerate() {
        match c {
            '0' => {}
            '1' => idx |= 1 << q,
            other => return Err(Error::InvalidParameter(format!("bad bit {other:?} in {bits:?}"))),
        }
    }
    Ok(idx)
}
