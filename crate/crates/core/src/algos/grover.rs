//! Grover search with a single marked basis state.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::algos::{Algorithm, BenchmarkResult};
use crate::backend::{compile, execute};
use crate::circuit::{bitstring_to_index, Circuit};
use crate::error::{Error, Result};
use crate::noise::DeviceModel;
use crate::rng::derive_seed;
use crate::stats::binomial_err;

pub const MAX_GROVER_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverSpec {
    pub n: usize,
    pub marked: String,
    pub iterations: usize,
}

impl GroverSpec {
    pub fn new(marked: &str, iterations: usize) -> Result<GroverSpec> {
        let spec = GroverSpec { n: marked.len(), marked: marked.to_string(), iterations };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_GROVER_QUBITS {
            return Err(Error::WidthExceeded { n: self.n, max: MAX_GROVER_QUBITS });
        }
        if self.marked.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: self.marked.len() });
        }
        bitstring_to_index(&self.marked)?;
        Ok(())
    }
}

/// Gray-code patterns over `k` bits, each as a vector of bits indexed from
/// the most significant position.
fn gray_code(k: usize) -> Vec<Vec<bool>> {
    let mut codes = vec![0usize];
    for i in 0..k {
        let reflected: Vec<usize> = codes.iter().rev().map(|x| x + (1 << i)).collect();
        codes.extend(reflected);
    }
    codes.into_iter().map(|x| (0..k).map(|pos| x >> (k - 1 - pos) & 1 == 1).collect()).collect()
}

/// Multi-controlled phase `diag(1, ..., 1, e^{i theta})` on `controls` and
/// `target`, built from CNOTs and controlled phases without ancillas. With no
/// controls this is `RZ(theta)`, equal up to global phase.
pub fn mcphase(c: &mut Circuit, theta: f64, controls: &[usize], target: usize) {
    let k = controls.len();
    if k == 0 {
        c.rz(target, theta);
        return;
    }
    let lam = theta / (1u64 << (k - 1)) as f64;
    let mut last: Option<Vec<bool>> = None;
    for pattern in gray_code(k) {
        if !pattern.iter().any(|b| *b) {
            continue;
        }
        let lm = pattern.iter().position(|b| *b).expect("non-zero pattern");
        let prev = last.get_or_insert_with(|| pattern.clone());
        match pattern.iter().zip(prev.iter()).position(|(a, b)| a != b) {
            Some(pos) if pos != lm => {
                c.cnot(controls[pos], controls[lm]);
            }
            Some(_) => {
                for idx in (lm + 1..k).filter(|&i| pattern[i]) {
                    c.cnot(controls[idx], controls[lm]);
                }
            }
            None => {}
        }
        let ones = pattern.iter().filter(|b| **b).count();
        let angle = if ones % 2 == 1 { lam } else { -lam };
        c.cphase(controls[lm], target, angle);
        last = Some(pattern);
    }
}

/// Phase flip on `|1...1>` over `qubits`.
pub fn mcz(c: &mut Circuit, qubits: &[usize]) {
    let (target, controls) = qubits.split_last().expect("at least one qubit");
    if controls.is_empty() {
        c.z(*target);
    } else {
        mcphase(c, PI, controls, *target);
    }
}

fn flip_zeros(c: &mut Circuit, marked: &str) {
    for (q, b) in marked.bytes().enumerate() {
        if b == b'0' {
            c.x(q);
        }
    }
}

/// Uniform superposition followed by `iterations` rounds of phase oracle and
/// diffusion. Diffusion is applied as `H X MCZ X H`, which equals
/// `2|s><s| - I` up to a global sign.
pub fn make_grover(spec: &GroverSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n;
    let all: Vec<usize> = (0..n).collect();
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.h(q);
    }
    for _ in 0..spec.iterations {
        flip_zeros(&mut c, &spec.marked);
        mcz(&mut c, &all);
        flip_zeros(&mut c, &spec.marked);
        for q in 0..n {
            c.h(q).x(q);
        }
        mcz(&mut c, &all);
        for q in 0..n {
            c.x(q).h(q);
        }
    }
    Ok(c)
}

/// `floor(pi/4 * sqrt(2^n / m))`.
pub fn grover_optimal_k(n: usize, marked_count: usize) -> usize {
    (FRAC_PI_4 * ((1u64 << n) as f64 / marked_count as f64).sqrt()).floor() as usize
}

/// Ideal success probability `sin^2((2k+1) asin(2^{-n/2}))`.
pub fn grover_success_analytic(n: usize, k: usize) -> f64 {
    let theta = (2f64.powf(-(n as f64) / 2.0)).asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Iteration counts `k*-1, k*, k*+1` with their table labels.
pub fn scan_iterations(n: usize) -> Vec<(usize, &'static str)> {
    let k = grover_optimal_k(n, 1);
    let mut out = Vec::new();
    if k >= 1 {
        out.push((k - 1, "k-1"));
    }
    out.push((k, "k"));
    out.push((k + 1, "k+1"));
    out
}

/// Runs the three-point iteration scan on `dev`. Each point samples with its
/// own substream of `seed`.
pub fn grover_scan(marked: &str, dev: &DeviceModel, shots: u64, seed: u64) -> Result<Vec<BenchmarkResult>> {
    let n = marked.len();
    let mut rows = Vec::new();
    for (k, label) in scan_iterations(n) {
        let circuit = make_grover(&GroverSpec::new(marked, k)?)?;
        let compiled = compile(&circuit, dev)?;
        let counts = execute(&compiled, dev, shots, derive_seed(seed, k as u64))?;
        let p = counts.frequency(marked);
        rows.push(
            BenchmarkResult::new(Algorithm::Grover, &dev.name, n, "success_prob", p, binomial_err(p, shots))
                .with_run(shots, seed)
                .with_extra("k", k)
                .with_extra("label", label)
                .with_extra("marked", marked)
                .with_extra("depth", compiled.depth()),
        );
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::to_unitary;
    use crate::noise::device_preset;
    use crate::sim::run;

    #[test]
    fn gray_code_reflects() {
        let g: Vec<String> = gray_code(3)
            .iter()
            .map(|p| p.iter().map(|b| if *b { '1' } else { '0' }).collect())
            .collect();
        assert_eq!(g, ["000", "001", "011", "010", "110", "111", "101", "100"]);
    }

    #[test]
    fn mcz_is_diagonal_sign_flip() {
        for n in 1..=7 {
            let mut c = Circuit::new(n);
            let all: Vec<usize> = (0..n).collect();
            mcz(&mut c, &all);
            let u = to_unitary(&c).unwrap();
            let dim = 1 << n;
            for r in 0..dim {
                for col in 0..dim {
                    let expected = if r != col {
                        0.0
                    } else if r == dim - 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    assert!((u[(r, col)].re - expected).abs() < 1e-10 && u[(r, col)].im.abs() < 1e-10, "n={n}");
                }
            }
        }
    }

    #[test]
    fn mcphase_on_permuted_qubits() {
        let mut c = Circuit::new(4);
        mcphase(&mut c, 0.7, &[3, 0, 2], 1);
        let u = to_unitary(&c).unwrap();
        for i in 0..16 {
            let expected = if i == 15 { num_complex::Complex64::from_polar(1.0, 0.7) } else { 1.0.into() };
            assert!((u[(i, i)] - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn four_qubit_example() {
        let sv = run(&make_grover(&GroverSpec::new("0110", 3).unwrap()).unwrap()).unwrap();
        let p = sv.probability("0110").unwrap();
        assert!((p - (7.0 * 0.25f64.asin()).sin().powi(2)).abs() < 1e-9);
        assert!((p - 0.961).abs() < 1e-3);
    }

    #[test]
    fn zero_iterations_is_uniform() {
        let sv = run(&make_grover(&GroverSpec::new("10110", 0).unwrap()).unwrap()).unwrap();
        assert!((sv.probability("10110").unwrap() - 1.0 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn optimal_iterations() {
        assert_eq!(grover_optimal_k(4, 1), 3);
        assert_eq!(grover_optimal_k(6, 1), 6);
        assert!((grover_success_analytic(6, 5) - 0.9635).abs() < 1e-4);
    }

    #[test]
    fn exhaustive_marked_states_n3() {
        for m in 0..8 {
            let marked = crate::sim::label(m, 3);
            for k in 0..4 {
                let sv = run(&make_grover(&GroverSpec::new(&marked, k).unwrap()).unwrap()).unwrap();
                assert!((sv.probability(&marked).unwrap() - grover_success_analytic(3, k)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn scan_returns_three_labelled_rows() {
        let rows = grover_scan("0110", &device_preset("IDEAL").unwrap(), 100, 3).unwrap();
        let labels: Vec<_> = rows.iter().map(|r| r.extra_str("label").unwrap().to_string()).collect();
        assert_eq!(labels, ["k-1", "k", "k+1"]);
        for r in &rows {
            let k = r.extra_f64("k").unwrap() as usize;
            let p = grover_success_analytic(4, k);
            let sigma = binomial_err(p, 100).max(0.01);
            assert!((r.value - p).abs() < 4.0 * sigma, "k={k} {} vs {p}", r.value);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(GroverSpec::new("", 1).is_err());
        assert!(GroverSpec::new("0120", 1).is_err());
        assert!(GroverSpec::new(&"0".repeat(13), 1).is_err());
    }
}
