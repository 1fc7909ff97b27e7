use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Chsh,
    Ghz,
    Qft,
    Grover,
    Qaoa,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Chsh => "chsh",
            Algorithm::Ghz => "ghz",
            Algorithm::Qft => "qft",
            Algorithm::Grover => "grover",
            Algorithm::Qaoa => "qaoa",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One measured metric. `extras` carries benchmark-specific context such as
/// the Grover iteration count or the QAOA graph label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkResult {
    pub algorithm: Algorithm,
    pub device: String,
    pub n: usize,
    pub metric_name: String,
    pub value: f64,
    pub err: f64,
    pub shots: u64,
    pub seed: u64,
    #[serde(default)]
    pub extras: BTreeMap<String, Value>,
}

impl BenchmarkResult {
    pub fn new(algorithm: Algorithm, device: &str, n: usize, metric_name: &str, value: f64, err: f64) -> Self {
        BenchmarkResult {
            algorithm,
            device: device.to_string(),
            n,
            metric_name: metric_name.to_string(),
            value,
            err,
            shots: 0,
            seed: 0,
            extras: BTreeMap::new(),
        }
    }

    pub fn with_run(mut self, shots: u64, seed: u64) -> Self {
        self.shots = shots;
        self.seed = seed;
        self
    }

    pub fn with_extra(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extras.insert(key.to_string(), value.into());
        self
    }

    pub fn extra_f64(&self, key: &str) -> Option<f64> {
        self.extras.get(key).and_then(Value::as_f64)
    }

    pub fn extra_str(&self, key: &str) -> Option<&str> {
        self.extras.get(key).and_then(Value::as_str)
    }
}
