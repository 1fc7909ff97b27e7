//! Bell-state preparation and the CHSH inequality test.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::{run, CountsTable};

/// `H(0)` then `CNOT(0, 1)`: the state `(|00> + |11>)/sqrt(2)`.
pub fn make_bell() -> Circuit {
    let mut c = Circuit::new(2);
    c.h(0).cnot(0, 1);
    c
}

/// Analyzer angles in the X-Z plane, as rotations about Y. The default set
/// maximizes the quantum CHSH value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChshSettings {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl Default for ChshSettings {
    fn default() -> Self {
        ChshSettings { a: 0.0, a_prime: FRAC_PI_2, b: FRAC_PI_4, b_prime: -FRAC_PI_4 }
    }
}

impl ChshSettings {
    pub fn new(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<Self> {
        let s = ChshSettings { a, a_prime, b, b_prime };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if [self.a, self.a_prime, self.b, self.b_prime].iter().all(|t| t.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("CHSH angles must be finite".into()))
        }
    }

    /// Setting pairs in the order `(a,b), (a,b'), (a',b), (a',b')`.
    pub fn pairs(&self) -> [(f64, f64); 4] {
        [(self.a, self.b), (self.a, self.b_prime), (self.a_prime, self.b), (self.a_prime, self.b_prime)]
    }
}

/// Bell preparation plus `RY(-theta_A)` on qubit 0 and `RY(-theta_B)` on
/// qubit 1, one circuit per setting pair.
pub fn chsh_circuits(settings: &ChshSettings) -> [Circuit; 4] {
    settings.pairs().map(|(ta, tb)| {
        let mut c = make_bell();
        c.ry(0, -ta).ry(1, -tb);
        c
    })
}

/// `E = (N00 + N11 - N01 - N10) / shots`.
pub fn correlator(counts: &CountsTable) -> Result<f64> {
    if counts.n_bits() != 2 {
        return Err(Error::LengthMismatch { expected: 2, got: counts.n_bits() });
    }
    let same = counts.get("00") + counts.get("11");
    let diff = counts.get("01") + counts.get("10");
    Ok((same as f64 - diff as f64) / counts.shots() as f64)
}

fn combine(e: [f64; 4]) -> f64 {
    e[0] + e[1] + e[2] - e[3]
}

/// CHSH value `S = E(a,b) + E(a,b') + E(a',b) - E(a',b')` with its standard
/// error, each correlator contributing variance `(1 - E^2) / shots`.
pub fn estimate_chsh(counts: &[CountsTable; 4]) -> Result<(f64, f64)> {
    let mut e = [0.0; 4];
    let mut var = 0.0;
    for (i, t) in counts.iter().enumerate() {
        e[i] = correlator(t)?;
        var += (1.0 - e[i] * e[i]).max(0.0) / t.shots() as f64;
    }
    Ok((combine(e), var.sqrt()))
}

/// Correlator of an exact two-qubit outcome distribution.
pub fn correlator_exact(probs: &[f64]) -> f64 {
    probs[0] + probs[3] - probs[1] - probs[2]
}

/// Noise-free S from the statevector of each analyzer circuit.
pub fn chsh_exact(settings: &ChshSettings) -> Result<f64> {
    let mut e = [0.0; 4];
    for (i, c) in chsh_circuits(settings).iter().enumerate() {
        e[i] = correlator_exact(&run(c)?.probabilities());
    }
    Ok(combine(e))
}
