use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Circuit, GateKind};
use crate::error::{Error, Result};

pub const MAX_UNITARY_QUBITS: usize = 10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Local matrix of a gate. Two-qubit matrices use local index
/// `bit(qubits[0]) + 2 * bit(qubits[1])`.
pub fn gate_matrix(kind: GateKind) -> DMatrix<Complex64> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::H => DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]),
        GateKind::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        GateKind::Y => DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        GateKind::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        GateKind::Rx(t) => {
            let (cs, sn) = ((t / 2.0).cos(), (t / 2.0).sin());
            DMatrix::from_row_slice(2, 2, &[c(cs, 0.0), c(0.0, -sn), c(0.0, -sn), c(cs, 0.0)])
        }
        GateKind::Ry(t) => {
            let (cs, sn) = ((t / 2.0).cos(), (t / 2.0).sin());
            DMatrix::from_row_slice(2, 2, &[c(cs, 0.0), c(-sn, 0.0), c(sn, 0.0), c(cs, 0.0)])
        }
        GateKind::Rz(t) => DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::from_polar(1.0, -t / 2.0), z, z, Complex64::from_polar(1.0, t / 2.0)],
        ),
        GateKind::CPhase(t) => {
            let mut m = DMatrix::identity(4, 4);
            m[(3, 3)] = Complex64::from_polar(1.0, t);
            m
        }
        GateKind::Cz => {
            let mut m = DMatrix::identity(4, 4);
            m[(3, 3)] = -o;
            m
        }
        GateKind::Cnot => {
            // control is local bit 0: |1,0> (1) <-> |1,1> (3)
            let mut m = DMatrix::zeros(4, 4);
            m[(0, 0)] = o;
            m[(2, 2)] = o;
            m[(1, 3)] = o;
            m[(3, 1)] = o;
            m
        }
        GateKind::Swap => {
            let mut m = DMatrix::zeros(4, 4);
            m[(0, 0)] = o;
            m[(3, 3)] = o;
            m[(1, 2)] = o;
            m[(2, 1)] = o;
            m
        }
    }
}

/// Full `2^n x 2^n` unitary of the circuit, built by left-multiplying the
/// identity with each gate embedded in the n-qubit space.
pub fn to_unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let n = circuit.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::WidthExceeded { n, max: MAX_UNITARY_QUBITS });
    }
    let dim = 1usize << n;
    let mut u = DMatrix::<Complex64>::identity(dim, dim);
    for gate in circuit.gates() {
        let local = gate_matrix(gate.kind);
        let qs = gate.qubits();
        let k = qs.len();
        let ldim = 1usize << k;
        let mask: usize = qs.iter().map(|&q| 1usize << q).sum();
        let embed = |rest: usize, l: usize| -> usize {
            let mut idx = rest;
            for (j, &q) in qs.iter().enumerate() {
                if l >> j & 1 == 1 {
                    idx |= 1 << q;
                }
            }
            idx
        };
        let mut next = DMatrix::<Complex64>::zeros(dim, dim);
        for row in 0..dim {
            let rest = row & !mask;
            let lrow = (0..k).map(|j| (row >> qs[j] & 1) << j).sum::<usize>();
            for lcol in 0..ldim {
                let g = local[(lrow, lcol)];
                if g.norm_sqr() == 0.0 {
                    continue;
                }
                let src = embed(rest, lcol);
                for col in 0..dim {
                    next[(row, col)] += g * u[(src, col)];
                }
            }
        }
        u = next;
    }
    Ok(u)
}
