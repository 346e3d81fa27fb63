use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Variants are grouped by the exit code the command-line front end maps
/// them to: validation problems (1), parse problems (2), and internal
/// invariant violations (3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight components must be positive, got ({0}, {1})")]
    ZeroWeight(u32, u32),
    #[error("weight components must be coprime, got ({0}, {1})")]
    WeightNotCoprime(u32, u32),
    #[error("degree mismatch: expected generalized degree {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("generalized degree {gdeg} is below delta = {delta}")]
    DegreeTooSmall { gdeg: u32, delta: u32 },
    #[error("size mismatch: expected {expected} elements, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("pairing matrix is singular in generalized degree {gdeg}")]
    SingularPairing { gdeg: u32 },
    #[error("hamiltonian is not quasi-homogeneous: {0}")]
    HamiltonianNotQuasiHomogeneous(String),
    #[error("perturbation term of generalized degree {found} is below the minimum {min}")]
    PerturbationOrderTooLow { found: i64, min: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree {k} is out of range: {reason}")]
    OutOfRange { k: u32, reason: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("inconsistent linear solve at generator degree {m}: {detail}")]
    InconsistentSolve { m: u32, detail: String },
    #[error("no generator y^q E reaches {slot} in generalized degree {gdeg}")]
    WitnessNotFound { gdeg: u32, slot: String },
    #[error("kept slots in generalized degree {gdeg} do not complement the bracket image")]
    NoComplement { gdeg: u32 },
    #[error("singular joint elimination system at generator degree {m}")]
    SingularJointSystem { m: u32 },
}

impl Error {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::InconsistentSolve { .. }
            | Error::WitnessNotFound { .. }
            | Error::NoComplement { .. }
            | Error::SingularJointSystem { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
