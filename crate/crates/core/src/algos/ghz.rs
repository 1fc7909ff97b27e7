//! GHZ-state preparation and a fidelity estimator built from populations and
//! parity oscillations.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::CountsTable;

/// `H(0)` followed by `CNOT(0, i)` for every other qubit.
pub fn make_ghz(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("GHZ needs at least 2 qubits, got {n}")));
    }
    let mut c = Circuit::new(n);
    c.h(0);
    for t in 1..n {
        c.cnot(0, t);
    }
    Ok(c)
}

/// Scan phases `j * pi / (n + 1)` for `j = 0..=n`.
pub fn parity_angles(n: usize) -> Vec<f64> {
    (0..=n).map(|j| j as f64 * PI / (n + 1) as f64).collect()
}

/// GHZ preparation followed by `RZ(phi)` and `H` on every qubit, so that the
/// measured parity is that of `cos(phi) X + sin(phi) Y` on each qubit.
pub fn parity_circuit(n: usize, phi: f64) -> Result<Circuit> {
    let mut c = make_ghz(n)?;
    for q in 0..n {
        c.rz(q, phi);
    }
    for q in 0..n {
        c.h(q);
    }
    Ok(c)
}

fn population_prob(probs: &[f64]) -> f64 {
    probs[0] + probs[probs.len() - 1]
}

fn parity(probs: &[f64]) -> f64 {
    probs.iter().enumerate().map(|(i, p)| if i.count_ones() % 2 == 0 { *p } else { -*p }).sum()
}

fn counts_parity(counts: &CountsTable) -> f64 {
    let signed: i64 = counts
        .iter()
        .map(|(bits, c)| {
            let ones = bits.bytes().filter(|b| *b == b'1').count();
            if ones % 2 == 0 { c as i64 } else { -(c as i64) }
        })
        .sum();
    signed as f64 / counts.shots() as f64
}

/// Projects the parity signal onto `e^{i n phi}`. Returns the complex
/// coefficient and the Fourier weights used.
fn fourier(n: usize, scans: &[(f64, f64)]) -> Result<(Complex64, Vec<Complex64>)> {
    let mut weights = Vec::with_capacity(n + 1);
    let mut s = Complex64::new(0.0, 0.0);
    for phi in parity_angles(n) {
        let (_, value) = scans
            .iter()
            .find(|(p, _)| (p - phi).abs() < 1e-9)
            .ok_or(Error::MissingScanSetting { phi })?;
        let w = Complex64::from_polar(1.0 / (n + 1) as f64, -(n as f64) * phi);
        s += w * value;
        weights.push(w);
    }
    Ok((s, weights))
}

/// `F = (P(0^n) + P(1^n) + C) / 2` where `C` is the amplitude of the
/// `n * phi` harmonic of the parity signal. The error propagates binomial
/// variances of both terms.
pub fn ghz_fidelity(population: &CountsTable, scans: &[(f64, CountsTable)]) -> Result<(f64, f64)> {
    let n = population.n_bits();
    let zeros = "0".repeat(n);
    let ones = "1".repeat(n);
    let pop = population.frequency(&zeros) + population.frequency(&ones);
    let var_pop = pop * (1.0 - pop) / population.shots() as f64;

    for (_, t) in scans {
        if t.n_bits() != n {
            return Err(Error::LengthMismatch { expected: n, got: t.n_bits() });
        }
    }
    let values: Vec<(f64, f64)> = scans.iter().map(|(phi, t)| (*phi, counts_parity(t))).collect();
    let (s, weights) = fourier(n, &values)?;
    let coherence = 2.0 * s.norm();

    let direction = if s.norm() > 0.0 { Some(s.conj() / s.norm()) } else { None };
    let mut var_c = 0.0;
    for (phi, w) in parity_angles(n).into_iter().zip(&weights) {
        let (pi, shots) = values
            .iter()
            .zip(scans)
            .find(|((p, _), _)| (p - phi).abs() < 1e-9)
            .map(|((_, v), (_, t))| (*v, t.shots() as f64))
            .expect("checked by fourier");
        let var_pi = (1.0 - pi * pi).max(0.0) / shots;
        let gain = match direction {
            Some(d) => 4.0 * (d * w).re.powi(2),
            None => 2.0 * w.norm_sqr(),
        };
        var_c += gain * var_pi;
    }

    let f = 0.5 * (pop + coherence);
    Ok((f, 0.5 * (var_pop + var_c).sqrt()))
}

/// The same estimator evaluated on exact outcome distributions.
pub fn ghz_fidelity_exact(population: &[f64], scans: &[(f64, Vec<f64>)]) -> Result<f64> {
    let n = population.len().trailing_zeros() as usize;
    let values: Vec<(f64, f64)> = scans.iter().map(|(phi, p)| (*phi, parity(p))).collect();
    let (s, _) = fourier(n, &values)?;
    Ok(0.5 * (population_prob(population) + 2.0 * s.norm()))
}
