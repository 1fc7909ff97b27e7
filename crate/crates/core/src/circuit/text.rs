//! Line-oriented circuit text format:
//!
//! ```text
//! qubits=2
//! H 0
//! CNOT 0,1
//! RZ 1 angle=0.7853981633974483
//! ```
//!
//! Blank lines and `#` comments are ignored.

use super::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

pub fn write_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits={}\n", circuit.n_qubits());
    for g in circuit.gates() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            let n = line
                .strip_prefix("qubits=")
                .ok_or_else(|| err(lineno, "expected header `qubits=<n>`".into()))?
                .trim()
                .parse::<usize>()
                .map_err(|e| err(lineno, format!("bad qubit count: {e}")))?;
            if n == 0 {
                return Err(err(lineno, "qubit count must be positive".into()));
            }
            circuit = Some(Circuit::new(n));
            continue;
        };
        let mut parts = line.split_whitespace();
        let name = parts.next().expect("non-empty line");
        let qubits: Vec<usize> = parts
            .next()
            .ok_or_else(|| err(lineno, format!("{name}: missing qubit list")))?
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| err(lineno, format!("bad qubit index: {e}")))?;
        let angle = match parts.next() {
            None => None,
            Some(tok) => {
                let v = tok
                    .strip_prefix("angle=")
                    .ok_or_else(|| err(lineno, format!("unexpected token {tok:?}")))?;
                Some(v.parse::<f64>().map_err(|e| err(lineno, format!("bad angle: {e}")))?)
            }
        };
        if let Some(extra) = parts.next() {
            return Err(err(lineno, format!("unexpected token {extra:?}")));
        }
        let gate = GateKind::from_name(name, angle)
            .and_then(|k| Gate::new(k, &qubits))
            .map_err(|e| err(lineno, e.to_string()))?;
        c.push_gate(gate).map_err(|e| err(lineno, e.to_string()))?;
    }
    circuit.ok_or_else(|| err(0, "empty circuit file".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_example() {
        let c = parse_circuit("qubits=2\n# bell\nH 0\nCNOT 0,1\n\nRZ 1 angle=-0.5\n").unwrap();
        assert_eq!(c.n_qubits(), 2);
        assert_eq!(c.len(), 3);
        assert_eq!(c.gates()[2].kind, GateKind::Rz(-0.5));
    }

    #[test]
    fn parse_errors_carry_line() {
        let e = parse_circuit("qubits=2\nH 0\nCNOT 0,2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        assert!(parse_circuit("H 0\n").is_err());
        assert!(parse_circuit("qubits=1\nRX 0\n").is_err());
        assert!(parse_circuit("qubits=1\nX 0 angle=1 junk\n").is_err());
        assert!(parse_circuit("").is_err());
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        let angle = -10.0f64..10.0;
        (0..11usize, 0..n, 1..n, angle).prop_map(move |(k, a, off, t)| {
            let b = (a + off) % n;
            let kind = [
                GateKind::H,
                GateKind::X,
                GateKind::Y,
                GateKind::Z,
                GateKind::Rx(t),
                GateKind::Ry(t),
                GateKind::Rz(t),
                GateKind::CPhase(t),
                GateKind::Cnot,
                GateKind::Cz,
                GateKind::Swap,
            ][k];
            if kind.arity() == 1 {
                Gate::new(kind, &[a]).unwrap()
            } else {
                Gate::new(kind, &[a, b]).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn text_roundtrip(gates in proptest::collection::vec(arb_gate(4), 0..30)) {
            let mut c = Circuit::new(4);
            for g in gates {
                c.push_gate(g).unwrap();
            }
            let back = parse_circuit(&write_circuit(&c)).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
