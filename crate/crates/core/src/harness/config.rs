use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algos::bell::ChshSettings;
use crate::algos::graph::{make_graph, GraphKind};
use crate::algos::grover::{GroverSpec, MAX_GROVER_QUBITS};
use crate::algos::qaoa::{check_penalty, DEFAULT_PENALTY, MAX_BRUTE_FORCE_VERTICES};
use crate::circuit::bitstring_to_index;
use crate::error::{Error, Result};
use crate::noise::{device_preset, DeviceModel};
use crate::sim::{DEFAULT_SHOTS, MAX_SIM_QUBITS};

/// Seeds per noisy device when the config does not say otherwise.
pub const DEFAULT_REPEATS: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BenchmarkSpec {
    Bell {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        settings: Option<ChshSettings>,
    },
    Ghz {
        n: usize,
    },
    Qft {
        n: usize,
        #[serde(default)]
        threshold: f64,
        /// Round-trip input; alternating `1010...` when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        input: Option<String>,
    },
    Grover {
        n: usize,
        marked: String,
    },
    Qaoa {
        graph: GraphKind,
        #[serde(default = "default_penalty")]
        penalty: f64,
    },
}

fn default_penalty() -> f64 {
    DEFAULT_PENALTY
}

impl fmt::Display for BenchmarkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchmarkSpec::Bell { .. } => write!(f, "bell"),
            BenchmarkSpec::Ghz { n } => write!(f, "ghz(n={n})"),
            BenchmarkSpec::Qft { n, threshold, .. } => write!(f, "qft(n={n}, threshold={threshold})"),
            BenchmarkSpec::Grover { n, marked } => write!(f, "grover(n={n}, marked={marked})"),
            BenchmarkSpec::Qaoa { graph, penalty } => write!(f, "qaoa({graph}, penalty={penalty})"),
        }
    }
}

impl BenchmarkSpec {
    /// Logical width of the benchmark circuits.
    pub fn width(&self) -> usize {
        match self {
            BenchmarkSpec::Bell { .. } => 2,
            BenchmarkSpec::Ghz { n } | BenchmarkSpec::Qft { n, .. } | BenchmarkSpec::Grover { n, .. } => *n,
            BenchmarkSpec::Qaoa { graph, .. } => match *graph {
                GraphKind::Path { n } | GraphKind::Ba { n, .. } => n,
                GraphKind::CompleteBipartite { a, b } => a + b,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("{self}: {msg}")));
        let n = self.width();
        if n == 0 || n > MAX_SIM_QUBITS {
            return bad(format!("width must be in 1..={MAX_SIM_QUBITS}"));
        }
        match self {
            BenchmarkSpec::Bell { settings } => {
                if let Some(s) = settings {
                    s.validate().map_err(|e| Error::Config(format!("{self}: {e}")))?;
                }
            }
            BenchmarkSpec::Ghz { n } if *n < 2 => return bad("GHZ needs at least 2 qubits".into()),
            BenchmarkSpec::Ghz { .. } => {}
            BenchmarkSpec::Qft { n, threshold, input } => {
                if !(threshold.is_finite() && *threshold >= 0.0) {
                    return bad("threshold must be a non-negative number".into());
                }
                if let Some(input) = input {
                    if input.len() != *n || bitstring_to_index(input).is_err() {
                        return bad(format!("input must be a {n}-bit string"));
                    }
                }
            }
            BenchmarkSpec::Grover { n, marked } => {
                if *n > MAX_GROVER_QUBITS {
                    return bad(format!("at most {MAX_GROVER_QUBITS} qubits"));
                }
                if marked.len() != *n {
                    return bad(format!("marked must be a {n}-bit string"));
                }
                GroverSpec::new(marked, 0).map_err(|e| Error::Config(format!("{self}: {e}")))?;
            }
            BenchmarkSpec::Qaoa { graph, penalty } => {
                if n > MAX_BRUTE_FORCE_VERTICES {
                    return bad(format!("at most {MAX_BRUTE_FORCE_VERTICES} vertices"));
                }
                check_penalty(*penalty).map_err(|e| Error::Config(format!("{self}: {e}")))?;
                make_graph(*graph).map_err(|e| Error::Config(format!("{self}: {e}")))?;
            }
        }
        Ok(())
    }
}

fn default_shots() -> u64 {
    DEFAULT_SHOTS
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub benchmarks: Vec<BenchmarkSpec>,
    /// Preset names or paths to device JSON files.
    pub devices: Vec<String>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Independent seeds per noisy device. Noise-free devices always run once.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeats: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::Config("shots must be positive".into()));
        }
        if self.benchmarks.is_empty() || self.devices.is_empty() {
            return Err(Error::Config("config needs at least one benchmark and one device".into()));
        }
        if self.repeats == Some(0) {
            return Err(Error::Config("repeats must be positive".into()));
        }
        self.benchmarks.iter().try_for_each(BenchmarkSpec::validate)
    }

    pub fn repeats_for(&self, dev: &DeviceModel) -> usize {
        if dev.is_noiseless() {
            1
        } else {
            self.repeats.unwrap_or(DEFAULT_REPEATS)
        }
    }

    /// Resolves device entries. Paths are taken relative to `base_dir`.
    pub fn resolve_devices(&self, base_dir: &Path) -> Result<Vec<DeviceModel>> {
        self.devices
            .iter()
            .map(|spec| match device_preset(spec) {
                Ok(d) => Ok(d),
                Err(Error::UnknownPreset(_)) => {
                    let path = base_dir.join(spec);
                    if path.exists() {
                        DeviceModel::load(&path).map_err(|e| Error::Config(format!("device {spec}: {e}")))
                    } else {
                        Err(Error::Config(format!("{spec:?} is neither a preset nor a device file")))
                    }
                }
                Err(e) => Err(e),
            })
            .collect()
    }

    /// Hex SHA-256 of the compact JSON serialization, leaving out
    /// `output_dir` so the hash identifies the experiment, not where it lands.
    pub fn hash(&self) -> String {
        let mut value = serde_json::to_value(self).expect("config serializes");
        if let Some(map) = value.as_object_mut() {
            map.remove("output_dir");
        }
        let json = serde_json::to_string(&value).expect("value serializes");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
