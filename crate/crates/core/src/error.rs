use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Pauli character {found:?} at position {position}")]
    PauliParse { position: usize, found: char },
    #[error("empty Pauli string")]
    EmptyPauli,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("qubit count {0} exceeds the supported maximum")]
    QubitCap(usize),
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },
    #[error("qubit {0} used twice in one operation")]
    DuplicateQubits(usize),
    #[error("matrix has no columns")]
    EmptyMatrix,
    #[error("row {row} has length {found}, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension {dim} exceeds the enumeration guard of {guard}")]
    DimensionGuard { dim: usize, guard: usize },
    #[error("C2 is not a subcode of C1")]
    NotSubcode,
    #[error("code has no logical qubits (k1 = {k1}, k2 = {k2})")]
    NoLogicalQubits { k1: usize, k2: usize },
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("codeword construction supports k = 1 only, got k = {0}")]
    UnsupportedLogicalCount(usize),
    #[error("no stabilizer-fixed seed state exists; the code is malformed")]
    SeedSearchExhausted,
    #[error("term count {terms} exceeds the guard of {guard}")]
    TermGuard { terms: usize, guard: usize },
    #[error("span is not orthonormal (Gram deviation {0:e})")]
    NonOrthonormalSpan(f64),
    #[error("gate {0} is not unitary")]
    NotUnitary(String),
    #[error("state has zero weight")]
    ZeroWeight,
    #[error("forced outcome ({0},{1}) has zero probability")]
    ForcedOutcomeImpossible(u8, u8),
    #[error("ran out of forced outcomes")]
    OutcomesExhausted,
    #[error("gate {0} is not a Clifford gate")]
    NonClifford(String),
    #[error("bell pool exhausted after {0} pairs")]
    BellPoolExhausted(usize),
    #[error("transcript does not match the register: {0}")]
    TranscriptMismatch(String),
    #[error("code {code} is incompatible: generator {generator} anticommutes with {mask}")]
    Incompatible {
        code: String,
        generator: String,
        mask: String,
    },
    #[error("no diagonal Clifford correction exists")]
    CorrectionUnavailable,
    #[error("state leaks out of the code space (leakage {0:e})")]
    Leakage(f64),
    #[error("invalid circuit token {0:?}")]
    CircuitToken(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
