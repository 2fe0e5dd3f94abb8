use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown group element `{0}`")]
    UnknownElement(String),

    #[error("generator `{generator}` is not unitary (residual {residual:.3e})")]
    NotUnitary { generator: String, residual: f64 },

    #[error("relation `{relation}` violated (residual {residual:.3e})")]
    RelationViolated { relation: String, residual: f64 },

    #[error("generator `{0}` is missing")]
    MissingGenerator(String),

    #[error("unexpected generator `{0}`")]
    UnknownGenerator(String),

    #[error("no character table is built in for {0}")]
    UnsupportedFamily(String),

    #[error("multiplicity of irrep {irrep} is {value}, not a nonnegative integer")]
    NonIntegerMultiplicity { irrep: usize, value: String },

    #[error("initial state does not generate orthonormal bases: {0}")]
    UnusableInitialState(String),

    #[error("reference labeling does not match the orbit bases: {0}")]
    LabelingMismatch(String),

    #[error("invalid orbit seed: {0}")]
    InvalidSeed(String),

    #[error("search space of {size} exceeds the limit of {limit}")]
    SearchSpaceTooLarge { size: f64, limit: f64 },

    #[error("{method} method unavailable: {reason}")]
    MethodUnavailable { method: String, reason: String },

    #[error("joint representation is not cyclic ({0})")]
    NotCyclic(String),

    #[error("event {event} has multiplicity {multiplicity}; games need 0/1 predicates")]
    MultiplicityNotSupported { event: String, multiplicity: u32 },

    #[error("schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}
