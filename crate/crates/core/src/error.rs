use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("circuit width {n} exceeds the limit of {max} qubits")]
    WidthExceeded { n: usize, max: usize },

    #[error("expected a bitstring of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("circuits have different widths ({0} vs {1})")]
    WidthMismatch(usize, usize),

    #[error("two-qubit gate on ({a}, {b}) is not a coupling edge of device {device}")]
    UnroutedCircuit { device: String, a: usize, b: usize },

    #[error("unknown device preset {0:?}")]
    UnknownPreset(String),

    #[error("no coupling path between physical qubits {from} and {to}")]
    DisconnectedGraph { from: usize, to: usize },

    #[error("counts table is empty")]
    EmptyCounts,

    #[error("parity scan is missing the setting at phi = {phi}")]
    MissingScanSetting { phi: f64 },

    #[error("approximation ratio undefined: optimal cost is zero")]
    UndefinedRatio,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("no archive rows match {0:?}")]
    NoMatchingRows(String),

    #[error("{context}: {source}")]
    Task {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
