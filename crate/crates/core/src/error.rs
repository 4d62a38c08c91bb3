use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate qubit label `{0}`")]
    DuplicateLabel(String),
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("qubit `{0}` is not in the register")]
    UnknownQubit(String),
    #[error("matrix is not unitary (deviation {deviation:e})")]
    NonUnitary { deviation: f64 },
    #[error("diagonal entry {index} has modulus {modulus}, outside (0, 1]")]
    BadDiagonal { index: usize, modulus: f64 },
    #[error("two-qubit gate applied to the same qubit `{0}` twice")]
    AliasedQubits(String),
    #[error("qubit `{label}` is not in a definite basis state (P(1) = {p_one})")]
    NotCollapsed { label: String, p_one: f64 },
    #[error("state vectors act on different registers")]
    RegisterMismatch,
    #[error("register of {requested} qubits exceeds the cap of {max}")]
    CapExceeded { requested: usize, max: usize },
    #[error("outcome {outcome} of `{label}` has zero probability")]
    ZeroProbability { label: String, outcome: u8 },
    #[error("state vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("cavity damping rate must be positive, got {0}")]
    InvalidKappa(f64),
    #[error("invalid cavity parameter: {0}")]
    InvalidCavity(&'static str),
    #[error("|r| deviates from 1 by {deviation:.4} (> {tolerance}); the pure-phase model does not hold")]
    NotPurePhase { deviation: f64, tolerance: f64 },
    #[error("invalid C-GHZ label: {0}")]
    InvalidLabel(String),
    #[error("cannot parse label `{0}`: expected `<k><+|->`")]
    ParseLabel(String),
    #[error("register does not have the expected shape: {0}")]
    ShapeMismatch(String),
    #[error("signature is unreachable for its group")]
    UnreachableSignature,
    #[error("input state is not one of the C-GHZ states (best overlap {best_overlap})")]
    NotInFamily { best_overlap: f64 },
    #[error("invalid noise parameter: {0}")]
    InvalidNoise(&'static str),
    #[error("trial count must be at least 1")]
    NoTrials,
}
