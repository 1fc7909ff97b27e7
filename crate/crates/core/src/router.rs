//! Qubit routing and native-gate decomposition.
//!
//! Routing uses the trivial placement (logical `i` on physical `i`) and,
//! for every two-qubit gate on non-adjacent qubits, walks the first operand
//! along a BFS shortest path (neighbours visited in ascending index order)
//! with SWAPs until it sits next to the second operand. No gates are
//! cancelled or reordered afterwards, so all overhead is attributable to
//! the topology.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{to_unitary, Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::noise::{active_qubits, compact, DeviceModel, NativeGate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoutingOverhead {
    pub added_swaps: usize,
    pub depth_before: usize,
    pub depth_after: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoutedCircuit {
    /// Coupling-legal circuit over the device's physical qubits (or the
    /// original width on all-to-all devices).
    pub circuit: Circuit,
    /// `final_permutation[slot] = physical qubit`. Slots `0..n` are the
    /// logical qubits; higher slots are the idle physical qubits, so the map
    /// is a bijection over the routed circuit's wires.
    pub final_permutation: Vec<usize>,
    pub overhead: RoutingOverhead,
}

impl RoutedCircuit {
    /// Physical qubit holding logical qubit `q` at the end of the circuit.
    pub fn physical(&self, q: usize) -> usize {
        self.final_permutation[q]
    }
}

fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Result<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if parent[to] == usize::MAX {
        return Err(Error::DisconnectedGraph { from, to });
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    Ok(path)
}

pub fn route(circuit: &Circuit, dev: &DeviceModel) -> Result<RoutedCircuit> {
    let n = circuit.n_qubits();
    if n > dev.n_qubits {
        return Err(Error::WidthExceeded { n, max: dev.n_qubits });
    }
    let depth_before = circuit.depth();
    if dev.is_all_to_all() {
        return Ok(RoutedCircuit {
            circuit: circuit.clone(),
            final_permutation: (0..n).collect(),
            overhead: RoutingOverhead { added_swaps: 0, depth_before, depth_after: depth_before },
        });
    }

    let adj = dev.neighbours();
    let width = dev.n_qubits;
    let mut to_phys: Vec<usize> = (0..width).collect();
    let mut to_slot: Vec<usize> = (0..width).collect();
    let mut out = Circuit::new(width);
    let mut added_swaps = 0;

    for g in circuit.gates() {
        if g.arity() == 2 {
            let (a, b) = (g.qubits()[0], g.qubits()[1]);
            let (pa, pb) = (to_phys[a], to_phys[b]);
            if adj[pa].binary_search(&pb).is_err() {
                let path = bfs_path(&adj, pa, pb)?;
                for hop in path.windows(2).take(path.len() - 2) {
                    let (u, v) = (hop[0], hop[1]);
                    out.swap(u, v);
                    added_swaps += 1;
                    let (su, sv) = (to_slot[u], to_slot[v]);
                    to_slot.swap(u, v);
                    to_phys[su] = v;
                    to_phys[sv] = u;
                }
            }
        }
        out.push_gate(g.remapped(|q| to_phys[q]))?;
    }

    let depth_after = out.depth();
    Ok(RoutedCircuit {
        circuit: out,
        final_permutation: to_phys,
        overhead: RoutingOverhead { added_swaps, depth_before, depth_after },
    })
}

fn push_native_cnot(out: &mut Circuit, native: NativeGate, c: usize, t: usize) {
    match native {
        NativeGate::Cnot => out.cnot(c, t),
        NativeGate::Cz => out.h(t).cz(c, t).h(t),
    };
}

/// Rewrites every two-qubit gate into the device's native entangler.
/// `CPHASE` is kept on CZ devices and becomes two CNOTs and three RZs
/// (exact up to a global phase) on CNOT devices.
pub fn decompose_native(circuit: &Circuit, native: NativeGate) -> Circuit {
    let mut out = Circuit::new(circuit.n_qubits());
    for g in circuit.gates() {
        let q = g.qubits();
        match (g.kind, native) {
            (GateKind::Cnot, _) => push_native_cnot(&mut out, native, q[0], q[1]),
            (GateKind::Cz, NativeGate::Cnot) => {
                out.h(q[1]).cnot(q[0], q[1]).h(q[1]);
            }
            (GateKind::Swap, _) => {
                push_native_cnot(&mut out, native, q[0], q[1]);
                push_native_cnot(&mut out, native, q[1], q[0]);
                push_native_cnot(&mut out, native, q[0], q[1]);
            }
            (GateKind::CPhase(t), NativeGate::Cnot) => {
                out.rz(q[0], t / 2.0).rz(q[1], t / 2.0).cnot(q[0], q[1]).rz(q[1], -t / 2.0).cnot(q[0], q[1]);
            }
            _ => {
                out.push_gate(*g).expect("same width");
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RouteRow {
    pub device: String,
    pub n: usize,
    pub depth_before: usize,
    pub depth_after: usize,
    pub two_qubit_count: usize,
    pub added_swaps: usize,
}

/// Routes and decomposes `circuit` for each device, in input order.
/// `depth_after` and `two_qubit_count` describe the native circuit.
pub fn routing_report(circuit: &Circuit, devices: &[DeviceModel]) -> Result<Vec<RouteRow>> {
    devices
        .iter()
        .map(|dev| {
            let routed = route(circuit, dev)?;
            let native = decompose_native(&routed.circuit, dev.native_two_qubit);
            Ok(RouteRow {
                device: dev.name.clone(),
                n: circuit.n_qubits(),
                depth_before: routed.overhead.depth_before,
                depth_after: native.depth(),
                two_qubit_count: native.gate_counts().two_qubit,
                added_swaps: routed.overhead.added_swaps,
            })
        })
        .collect()
}

pub fn report_csv(rows: &[RouteRow]) -> String {
    let mut out = String::from("device,n,depth_before,depth_after,two_qubit_count,added_swaps\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.device, r.n, r.depth_before, r.depth_after, r.two_qubit_count, r.added_swaps
        ));
    }
    out
}

/// Checks that `routed` (possibly already decomposed) implements `original`
/// up to the wire permutation `final_permutation` and a global phase, by
/// comparing dense unitaries on the routed circuit's active qubits.
pub fn equivalent_under_permutation(
    original: &Circuit,
    routed: &Circuit,
    final_permutation: &[usize],
    tol: f64,
) -> Result<bool> {
    let n = original.n_qubits();
    let active = active_qubits(routed, n);
    let m = active.len();
    let mut pos = vec![usize::MAX; routed.n_qubits()];
    for (j, &q) in active.iter().enumerate() {
        pos[q] = j;
    }
    // Slots that never moved off the active set are exactly the active ones.
    for &q in &active {
        if pos[final_permutation[q]] == usize::MAX {
            return Ok(false);
        }
    }
    let actual = to_unitary(&compact(routed, &active)?)?;
    let logical = to_unitary(&original.remapped(m, |q| q)?)?;
    let dim = 1usize << m;
    let permute = |x: usize| -> usize {
        (0..m).fold(0, |acc, j| acc | ((x >> j & 1) << pos[final_permutation[active[j]]]))
    };
    let mut expected = DMatrix::<Complex64>::zeros(dim, dim);
    for row in 0..dim {
        let to = permute(row);
        for col in 0..dim {
            expected[(to, col)] = logical[(row, col)];
        }
    }
    Ok(equal_up_to_phase(&actual, &expected, tol))
}

pub fn equal_up_to_phase(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let Some((k, _)) = b.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())) else {
        return true;
    };
    let (ak, bk) = (a.iter().nth(k).copied().unwrap_or_default(), b.iter().nth(k).copied().unwrap_or_default());
    if ak.norm() < 1e-12 {
        return false;
    }
    let phase = bk / ak;
    let phase = phase / phase.norm();
    a.iter().zip(b.iter()).all(|(x, y)| (x * phase - y).norm() < tol)
}

/// The gates that act on two qubits.
pub fn two_qubit_gates(circuit: &Circuit) -> impl Iterator<Item = &Gate> {
    circuit.gates().iter().filter(|g| g.arity() == 2)
}
