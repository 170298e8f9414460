use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rider: {0}")]
    InvalidRider(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("the fast counter only supports the bishop, got {0}")]
    FastMethodUnsupported(String),
    #[error("insufficient samples for residue class {residue} mod {period}: have {have}, need {need}")]
    InsufficientSamples { residue: u64, period: u64, have: usize, need: usize },
    #[error("samples are inconsistent with degree {degree} and period {period} (residue class {residue})")]
    InconsistentSamples { degree: usize, period: u64, residue: u64 },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("fixation edges do not form a spanning negative 1-forest of the doubled clique graph")]
    SingularFixation,
    #[error("fixation value {0} is not an integer")]
    NonIntegerFixation(String),
    #[error("bound exceeded: q = {q} > {bound}")]
    BoundExceeded { q: usize, bound: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
