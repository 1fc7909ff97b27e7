use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{bitstring_to_index, index_to_bitstring};
use crate::error::{Error, Result};

/// Measured bitstring histogram. Serializes as
/// `{"shots": n, "counts": {"bitstring": count, ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCounts", into = "RawCounts")]
pub struct CountsTable {
    n_bits: usize,
    shots: u64,
    counts: BTreeMap<String, u64>,
}

#[derive(Serialize, Deserialize)]
struct RawCounts {
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl TryFrom<RawCounts> for CountsTable {
    type Error = Error;

    fn try_from(raw: RawCounts) -> Result<Self> {
        let n_bits = raw.counts.keys().next().map_or(0, |k| k.len());
        CountsTable::new(n_bits, raw.shots, raw.counts)
    }
}

impl From<CountsTable> for RawCounts {
    fn from(c: CountsTable) -> Self {
        RawCounts { shots: c.shots, counts: c.counts }
    }
}

impl CountsTable {
    /// Validates that all keys are `n_bits`-long bitstrings summing to `shots`.
    pub fn new(n_bits: usize, shots: u64, counts: BTreeMap<String, u64>) -> Result<CountsTable> {
        if shots == 0 {
            return Err(Error::EmptyCounts);
        }
        for k in counts.keys() {
            if k.len() != n_bits {
                return Err(Error::LengthMismatch { expected: n_bits, got: k.len() });
            }
            if let Some(c) = k.chars().find(|c| *c != '0' && *c != '1') {
                return Err(Error::InvalidParameter(format!("bad bit {c:?} in {k:?}")));
            }
        }
        let total: u64 = counts.values().sum();
        if total != shots {
            return Err(Error::InvalidParameter(format!("counts sum to {total}, expected {shots} shots")));
        }
        let counts = counts.into_iter().filter(|(_, v)| *v > 0).collect();
        Ok(CountsTable { n_bits, shots, counts })
    }

    pub(crate) fn from_index_counts(n_bits: usize, shots: u64, hist: BTreeMap<usize, u64>) -> CountsTable {
        let counts = hist.into_iter().map(|(i, c)| (index_to_bitstring(i, n_bits), c)).collect();
        CountsTable { n_bits, shots, counts }
    }

    /// All `shots` on a single bitstring.
    pub fn single(bitstring: &str, shots: u64) -> Result<CountsTable> {
        CountsTable::new(bitstring.len(), shots, BTreeMap::from([(bitstring.to_string(), shots)]))
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn get(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    pub fn frequency(&self, bitstring: &str) -> f64 {
        self.get(bitstring) as f64 / self.shots as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `(basis index, count)` pairs.
    pub fn index_counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(k, v)| (bitstring_to_index(k).expect("validated on construction"), *v))
    }

    /// Empirical distribution over `2^n_bits` basis indices.
    pub fn to_probabilities(&self) -> Vec<f64> {
        let mut p = vec![0.0; 1 << self.n_bits];
        for (i, c) in self.index_counts() {
            p[i] = c as f64 / self.shots as f64;
        }
        p
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("counts serialize")
    }

    pub fn from_json(s: &str) -> Result<CountsTable> {
        Ok(serde_json::from_str(s)?)
    }
}
