use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit count mismatch: state has {state}, circuit has {circuit}")]
    QubitCountMismatch { state: usize, circuit: usize },

    #[error("{n} qubits exceeds the limit of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("non-finite parameter in gate {0}")]
    NonFinite(String),

    #[error("gate {0} is not native")]
    NotNative(String),

    #[error("lowering failed: {0}")]
    Lowering(String),

    #[error("gate {0} has no controlled form")]
    NotControllable(String),

    #[error("invalid coupling map: {0}")]
    Coupling(String),

    #[error("invalid Hartree-Fock data: {0}")]
    Schema(String),

    #[error("ERI symmetry violated at ({a},{b},{r},{s}): difference {diff:e}")]
    Symmetry {
        a: usize,
        b: usize,
        r: usize,
        s: usize,
        diff: f64,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("zero energy denominator at {0}")]
    ZeroDenominator(String),

    #[error("rotation target {value} for mask {mask} lies outside its valid range")]
    AngleRange { mask: usize, value: f64 },

    #[error("base state {y:#b} has nonzero amplitude {gamma}")]
    BaseStateNonzero { y: usize, gamma: f64 },

    #[error("no base state with zero amplitude in block {0}")]
    NoBaseState(String),

    #[error("all amplitudes are zero")]
    AllZero,

    #[error("register plan: {0}")]
    RegisterPlan(String),

    #[error("degenerate regression window: {0}")]
    DegenerateWindow(String),

    #[error("missing part {0}")]
    MissingPart(String),

    #[error("counts: {0}")]
    Counts(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True when the root cause is a numerical failure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::ZeroDenominator(_)
            | Error::AngleRange { .. }
            | Error::DegenerateWindow(_)
            | Error::AllZero => true,
            Error::Context { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
