//! Quantum Fourier transform, its approximate variant, and the round-trip
//! reliability benchmark.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::circuit::{bitstring_to_index, rk_angle, to_unitary, Circuit, GateKind};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::sim::CountsTable;
use crate::stats::binomial_err;

/// Largest width accepted by [`aqft_error`].
pub const MAX_AQFT_QUBITS: usize = 8;

/// QFT with qubit `n-1` as the most significant bit: Hadamards and controlled
/// rotations from the top qubit down, then a bit-reversal of SWAPs. Rotations
/// with `|angle| < threshold` are dropped; `threshold = 0` gives the exact
/// transform `|j> -> sum_k e^{2 pi i jk / 2^n} |k> / sqrt(2^n)`.
pub fn make_qft(n: usize, threshold: f64) -> Circuit {
    let mut c = Circuit::new(n);
    for target in (0..n).rev() {
        c.h(target);
        for control in (0..target).rev() {
            let angle = rk_angle((target - control + 1) as u32);
            if angle.abs() >= threshold {
                c.cphase(control, target, angle);
            }
        }
    }
    for i in 0..n / 2 {
        c.swap(i, n - 1 - i);
    }
    c
}

/// Spectral norm of `U_exact - U_approx`, by power iteration on the Gram
/// matrix of the difference.
pub fn aqft_error(n: usize, threshold: f64) -> Result<f64> {
    if n > MAX_AQFT_QUBITS {
        return Err(Error::WidthExceeded { n, max: MAX_AQFT_QUBITS });
    }
    let diff = to_unitary(&make_qft(n, 0.0))? - to_unitary(&make_qft(n, threshold))?;
    Ok(spectral_norm(&diff, 1e-8))
}

/// Largest singular value of `m`, iterating until the eigen-residual of
/// `m^H m` falls below `rel_tol` relative to the current estimate.
pub fn spectral_norm(m: &DMatrix<Complex64>, rel_tol: f64) -> f64 {
    if m.iter().all(|z| z.norm() == 0.0) {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let dim = gram.nrows();
    let mut rng = Stream::new(0x5eed);
    let mut v = DVector::from_fn(dim, |_, _| Complex64::new(rng.uniform() - 0.5, rng.uniform() - 0.5));
    v /= Complex64::new(v.norm(), 0.0);
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        let w = &gram * &v;
        lambda = v.dotc(&w).re;
        let residual = (&w - &v * Complex64::new(lambda, 0.0)).norm();
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        if residual <= rel_tol * lambda.abs() {
            break;
        }
        v = w / Complex64::new(norm, 0.0);
    }
    lambda.max(0.0).sqrt()
}

/// X gates preparing `input`, then the exact QFT and its inverse.
pub fn make_qft_roundtrip(n: usize, input: &str) -> Result<Circuit> {
    make_approx_roundtrip(n, 0.0, input)
}

/// Round trip through the approximate transform `make_qft(n, threshold)`.
pub fn make_approx_roundtrip(n: usize, threshold: f64, input: &str) -> Result<Circuit> {
    if input.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: input.len() });
    }
    bitstring_to_index(input)?;
    let mut c = Circuit::new(n);
    for (q, b) in input.bytes().enumerate() {
        if b == b'1' {
            c.push(GateKind::X, &[q]);
        }
    }
    let qft = make_qft(n, threshold);
    c.append(&qft)?;
    c.append(&qft.inverse())?;
    Ok(c)
}

/// Default round-trip input: alternating `1010...`.
pub fn default_input(n: usize) -> String {
    (0..n).map(|q| if q % 2 == 0 { '1' } else { '0' }).collect()
}

/// Fraction of shots returning `input`, with binomial error.
pub fn roundtrip_fidelity(counts: &CountsTable, input: &str) -> Result<(f64, f64)> {
    if counts.n_bits() != input.len() {
        return Err(Error::LengthMismatch { expected: counts.n_bits(), got: input.len() });
    }
    let p = counts.frequency(input);
    Ok((p, binomial_err(p, counts.shots())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::sim::run;
    use std::f64::consts::PI;

    /// `F[k][j] = e^{2 pi i jk / N} / sqrt(N)`.
    fn fourier_matrix(n: usize) -> DMatrix<Complex64> {
        let dim = 1usize << n;
        let s = 1.0 / (dim as f64).sqrt();
        DMatrix::from_fn(dim, dim, |k, j| Complex64::from_polar(s, 2.0 * PI * ((j * k) % dim) as f64 / dim as f64))
    }

    #[test]
    fn matches_fourier_matrix() {
        for n in 1..=8 {
            let u = to_unitary(&make_qft(n, 0.0)).unwrap();
            let f = fourier_matrix(n);
            let worst = (u - f).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(worst < 1e-10, "n={n} worst={worst}");
        }
    }

    #[test]
    fn uniform_from_zero() {
        let p = run(&make_qft(5, 0.0)).unwrap().probabilities();
        assert!(p.iter().all(|x| (x - 1.0 / 32.0).abs() < 1e-12));
    }

    #[test]
    fn threshold_above_smallest_rotation_drops_one_gate() {
        let cphases = |c: &Circuit| c.count_kind(|k| matches!(k, GateKind::CPhase(_)));
        let exact = make_qft(6, 0.0);
        let approx = make_qft(6, rk_angle(6) * 1.001);
        assert_eq!(cphases(&exact), 15);
        assert_eq!(cphases(&exact) - cphases(&approx), 1);
    }

    #[test]
    fn roundtrip_restores_input() {
        for input in ["101101", "000000", "111111"] {
            let sv = run(&make_qft_roundtrip(6, input).unwrap()).unwrap();
            assert!((sv.probability(input).unwrap() - 1.0).abs() < 1e-12);
        }
        assert_eq!(default_input(5), "10101");
        assert!(make_qft_roundtrip(3, "10").is_err());
    }

    #[test]
    fn exact_threshold_has_zero_error() {
        for n in 1..=6 {
            assert_eq!(aqft_error(n, 0.0).unwrap(), 0.0);
        }
        assert!(matches!(aqft_error(9, 0.0), Err(Error::WidthExceeded { .. })));
    }

    #[test]
    fn error_is_not_monotone_once_saturated() {
        // Keeping only the pi/2 rotations is slightly worse than keeping none.
        let keep_half_pi = aqft_error(5, 1.5).unwrap();
        let drop_all = aqft_error(5, 2.0).unwrap();
        assert!((keep_half_pi - 1.99958).abs() < 1e-5);
        assert!((drop_all - 1.99835).abs() < 1e-5);
    }

    #[test]
    fn power_iteration_matches_svd() {
        for n in 2..=5 {
            for threshold in [0.1, 0.5, 1.0, 2.0, 4.0] {
                let diff = to_unitary(&make_qft(n, 0.0)).unwrap() - to_unitary(&make_qft(n, threshold)).unwrap();
                let oracle = diff.clone().singular_values().max();
                let got = aqft_error(n, threshold).unwrap();
                assert!((got - oracle).abs() < 1e-8, "n={n} t={threshold} {got} vs {oracle}");
            }
        }
    }
}
