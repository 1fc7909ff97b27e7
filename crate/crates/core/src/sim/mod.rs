//! Ideal state-vector simulation.
//!
//! Gates are applied in place with strided loops over amplitude pairs
//! (or quadruples for two-qubit gates); no gate matrix is ever embedded.

mod counts;

pub use counts::CountsTable;

use num_complex::Complex64;

use crate::circuit::{bitstring_to_index, index_to_bitstring, Circuit, GateKind};
use crate::error::{Error, Result};
use crate::rng::Stream;

pub const MAX_SIM_QUBITS: usize = 20;

/// Shots per circuit unless a run overrides it.
pub const DEFAULT_SHOTS: u64 = 100;

/// Non-identity single-qubit Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<StateVector> {
        if n_qubits == 0 || n_qubits > MAX_SIM_QUBITS {
            return Err(Error::WidthExceeded { n: n_qubits, max: MAX_SIM_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability(&self, bitstring: &str) -> Result<f64> {
        if bitstring.len() != self.n_qubits {
            return Err(Error::LengthMismatch { expected: self.n_qubits, got: bitstring.len() });
        }
        Ok(self.amps[bitstring_to_index(bitstring)?].norm_sqr())
    }

    /// `sum_z |amp(z)|^2 cost(z)` over every basis index `z`.
    pub fn expectation_diagonal(&self, cost: impl Fn(usize) -> f64) -> f64 {
        self.amps.iter().enumerate().map(|(z, a)| a.norm_sqr() * cost(z)).sum()
    }

    pub fn apply(&mut self, kind: GateKind, qubits: &[usize]) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match kind {
            GateKind::H => self.apply_1q(qubits[0], [[s.into(), s.into()], [s.into(), (-s).into()]]),
            GateKind::X => self.apply_pauli(qubits[0], Pauli::X),
            GateKind::Y => self.apply_pauli(qubits[0], Pauli::Y),
            GateKind::Z => self.apply_pauli(qubits[0], Pauli::Z),
            GateKind::Rx(t) => {
                let (c, sn) = ((t / 2.0).cos(), (t / 2.0).sin());
                let m = Complex64::new(0.0, -sn);
                self.apply_1q(qubits[0], [[c.into(), m], [m, c.into()]]);
            }
            GateKind::Ry(t) => {
                let (c, sn) = ((t / 2.0).cos(), (t / 2.0).sin());
                self.apply_1q(qubits[0], [[c.into(), (-sn).into()], [sn.into(), c.into()]]);
            }
            GateKind::Rz(t) => {
                let lo = Complex64::from_polar(1.0, -t / 2.0);
                let hi = Complex64::from_polar(1.0, t / 2.0);
                let bit = 1 << qubits[0];
                for (i, a) in self.amps.iter_mut().enumerate() {
                    *a *= if i & bit == 0 { lo } else { hi };
                }
            }
            GateKind::CPhase(t) => self.phase_both(qubits[0], qubits[1], Complex64::from_polar(1.0, t)),
            GateKind::Cz => self.phase_both(qubits[0], qubits[1], Complex64::new(-1.0, 0.0)),
            GateKind::Cnot => {
                let (c, t) = (1 << qubits[0], 1 << qubits[1]);
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Swap => {
                let (a, b) = (1 << qubits[0], 1 << qubits[1]);
                for i in 0..self.amps.len() {
                    if i & a != 0 && i & b == 0 {
                        self.amps.swap(i, (i & !a) | b);
                    }
                }
            }
        }
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) {
        let bit = 1 << q;
        match p {
            Pauli::X => {
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        self.amps.swap(i, i | bit);
                    }
                }
            }
            Pauli::Y => {
                // Y|0> = i|1>, Y|1> = -i|0>
                let i_unit = Complex64::new(0.0, 1.0);
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let a0 = self.amps[i];
                        let a1 = self.amps[i | bit];
                        self.amps[i] = -i_unit * a1;
                        self.amps[i | bit] = i_unit * a0;
                    }
                }
            }
            Pauli::Z => {
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a = -*a;
                    }
                }
            }
        }
    }

    fn apply_1q(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1 << q;
        let len = self.amps.len();
        let mut base = 0;
        while base < len {
            for i in base..base + bit {
                let a0 = self.amps[i];
                let a1 = self.amps[i | bit];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += bit << 1;
        }
    }

    fn phase_both(&mut self, a: usize, b: usize, phase: Complex64) {
        let mask = (1 << a) | (1 << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= phase;
            }
        }
    }

    /// Cumulative distribution over basis indices, for inverse-CDF sampling.
    pub fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.amps
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect()
    }
}

/// Runs `circuit` from `|0...0>`.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    let mut sv = StateVector::zero(circuit.n_qubits())?;
    for g in circuit.gates() {
        sv.apply(g.kind, g.qubits());
    }
    Ok(sv)
}

/// Index drawn from a cumulative distribution by inverse transform.
pub(crate) fn draw_index(cdf: &[f64], u: f64) -> usize {
    let total = *cdf.last().expect("non-empty distribution");
    let target = u * total;
    cdf.partition_point(|&c| c <= target).min(cdf.len() - 1)
}

/// Draws `shots` basis-state samples. Shot `i` uses the first uniform of
/// substream `(seed, i)`, the same discipline as noisy execution.
pub fn sample(sv: &StateVector, shots: u64, seed: u64) -> CountsTable {
    let cdf = sv.cdf();
    let n = sv.n_qubits();
    let mut hist = std::collections::BTreeMap::new();
    for shot in 0..shots {
        let mut rng = Stream::substream(seed, shot);
        *hist.entry(draw_index(&cdf, rng.uniform())).or_insert(0u64) += 1;
    }
    CountsTable::from_index_counts(n, shots, hist)
}

/// Alias kept for callers that prefer the free-function form.
pub fn probability(sv: &StateVector, bitstring: &str) -> Result<f64> {
    sv.probability(bitstring)
}

pub fn expectation_diagonal(sv: &StateVector, cost: impl Fn(usize) -> f64) -> f64 {
    sv.expectation_diagonal(cost)
}

/// Basis-state label of index `i` for an `n`-qubit register.
pub fn label(i: usize, n: usize) -> String {
    index_to_bitstring(i, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::to_unitary;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> Circuit {
        let mut c = Circuit::new(2);
        c.h(0).cnot(0, 1);
        c
    }

    #[test]
    fn bell_amplitudes() {
        let sv = run(&bell()).unwrap();
        let a = sv.amplitudes();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((a[3].re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(a[1].norm() < 1e-12 && a[2].norm() < 1e-12);
        assert!((sv.probability("00").unwrap() - 0.5).abs() < 1e-12);
        assert!(sv.probability("01").unwrap().abs() < 1e-12);
        assert!(matches!(sv.probability("0"), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn ghz3_amplitudes() {
        let mut c = Circuit::new(3);
        c.h(0).cnot(0, 1).cnot(0, 2);
        let p = run(&c).unwrap().probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[7] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn uniform_superposition() {
        let mut c = Circuit::new(4);
        for q in 0..4 {
            c.h(q);
        }
        let sv = run(&c).unwrap();
        assert!(sv.amplitudes().iter().all(|a| (a.re - 0.25).abs() < 1e-12 && a.im.abs() < 1e-12));
    }

    #[test]
    fn width_guard() {
        assert!(run(&Circuit::new(21)).is_err());
    }

    #[test]
    fn sample_examples() {
        let sv = run(&bell()).unwrap();
        let big = sample(&sv, 1_000_000, 42);
        let both = (big.get("00") + big.get("11")) as f64 / 1e6;
        assert!((0.997..=1.0).contains(&both));

        let small = sample(&sv, 100, 42);
        assert!((small.frequency("00") - 0.5).abs() <= 0.15);

        let mut c = Circuit::new(4);
        c.x(1).x(2);
        let counts = sample(&run(&c).unwrap(), 37, 5);
        assert_eq!(counts.get("0110"), 37);
        assert_eq!(counts.shots(), 37);
    }

    #[test]
    fn sample_is_deterministic() {
        let mut c = Circuit::new(3);
        c.h(0).h(1).ry(2, 0.4);
        let sv = run(&c).unwrap();
        assert_eq!(sample(&sv, 500, 99), sample(&sv, 500, 99));
        assert_ne!(sample(&sv, 500, 99), sample(&sv, 500, 100));
    }

    #[test]
    fn frequencies_converge() {
        let mut c = Circuit::new(3);
        c.h(0).ry(1, 1.1).cnot(0, 2).rx(2, 0.3);
        let sv = run(&c).unwrap();
        let p = sv.probabilities();
        for (shots, seed) in [(10_000u64, 1u64), (40_000, 2)] {
            let counts = sample(&sv, shots, seed);
            let tv: f64 = (0..8)
                .map(|i| (counts.get(&label(i, 3)) as f64 / shots as f64 - p[i]).abs())
                .sum::<f64>()
                / 2.0;
            assert!(tv <= 5.0 / (shots as f64).sqrt(), "tv={tv}");
        }
    }

    #[test]
    fn expectation_examples() {
        let mut c = Circuit::new(2);
        c.h(0).h(1);
        let w = |z: usize| z.count_ones() as f64;
        assert!((run(&c).unwrap().expectation_diagonal(w) - 1.0).abs() < 1e-12);
        let mut c = Circuit::new(2);
        c.x(0).x(1);
        assert!((run(&c).unwrap().expectation_diagonal(w) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn norm_drift_over_many_gates() {
        let mut c = Circuit::new(5);
        let mut rng = Stream::new(3);
        for _ in 0..10_000 {
            let a = rng.below(5) as usize;
            let b = (a + 1 + rng.below(4) as usize) % 5;
            let t = rng.uniform() * 6.0;
            match rng.below(6) {
                0 => c.h(a),
                1 => c.rx(a, t),
                2 => c.ry(a, t),
                3 => c.cphase(a, b, t),
                4 => c.cnot(a, b),
                _ => c.swap(a, b),
            };
        }
        let sv = run(&c).unwrap();
        assert!((sv.norm_sqr() - 1.0).abs() < 1e-9);
    }

    fn arb_circuit(n: usize, len: usize) -> impl Strategy<Value = Circuit> {
        proptest::collection::vec((0..11usize, 0..n, 1..n, -4.0f64..4.0), 0..len).prop_map(move |ops| {
            let mut c = Circuit::new(n);
            for (k, a, off, t) in ops {
                let b = (a + off) % n;
                match k {
                    0 => c.h(a),
                    1 => c.x(a),
                    2 => c.y(a),
                    3 => c.z(a),
                    4 => c.rx(a, t),
                    5 => c.ry(a, t),
                    6 => c.rz(a, t),
                    7 => c.cphase(a, b, t),
                    8 => c.cnot(a, b),
                    9 => c.cz(a, b),
                    _ => c.swap(a, b),
                };
            }
            c
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn simulator_matches_matrix(c in arb_circuit(4, 25)) {
            let sv = run(&c).unwrap();
            let u = to_unitary(&c).unwrap();
            for (i, a) in sv.amplitudes().iter().enumerate() {
                prop_assert!((a - u[(i, 0)]).norm() < 1e-9);
            }
        }

        #[test]
        fn unitarity_and_inverse(c in arb_circuit(3, 20)) {
            let u = to_unitary(&c).unwrap();
            let ui = to_unitary(&c.inverse()).unwrap();
            let eye = u.adjoint() * &u;
            for i in 0..8 {
                for j in 0..8 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((eye[(i, j)].re - want).abs() < 1e-10 && eye[(i, j)].im.abs() < 1e-10);
                    prop_assert!((ui[(i, j)] - u[(j, i)].conj()).norm() < 1e-10);
                }
            }
        }

        #[test]
        fn depth_subadditive(a in arb_circuit(3, 15), b in arb_circuit(3, 15)) {
            let ab = a.compose(&b).unwrap();
            prop_assert!(ab.depth() <= a.depth() + b.depth());
            prop_assert_eq!(ab.gate_counts().total, a.gate_counts().total + b.gate_counts().total);
        }
    }

    pub(crate) fn random_circuit(n: usize, len: usize, seed: u64) -> Circuit {
        let mut rng = Stream::new(seed);
        let mut c = Circuit::new(n);
        for _ in 0..len {
            let a = rng.below(n as u64) as usize;
            let b = (a + 1 + rng.below(n as u64 - 1) as usize) % n;
            let t = rng.uniform() * 6.0 - 3.0;
            match rng.below(8) {
                0 => c.h(a),
                1 => c.ry(a, t),
                2 => c.rz(a, t),
                3 => c.rx(a, t),
                4 => c.cphase(a, b, t),
                5 => c.cnot(a, b),
                6 => c.cz(a, b),
                _ => c.swap(a, b),
            };
        }
        c
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let c = random_circuit(4, 40, 11);
        let u = to_unitary(&c.compose(&c.inverse()).unwrap()).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((u[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-10);
            }
        }
    }
}
