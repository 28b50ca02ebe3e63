use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {op} on {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("{0} is not a unit vector")]
    NotUnit(&'static str),

    #[error("triple does not satisfy the triality relation (residual {0})")]
    NotInH(f64),

    #[error("triple of so(8) elements violates infinitesimal triality (residual {0})")]
    TrialityViolated(f64),

    #[error("linear system has no solution")]
    Inconsistent,

    #[error("linear system solution is not unique (rank {rank} < {unknowns})")]
    NotUnique { rank: usize, unknowns: usize },

    #[error("matrix does not lie in {family}")]
    NotInFamily { family: &'static str },

    #[error("expected a {expected} element, got {got}")]
    WrongFamily {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invariants are not realizable: {0}")]
    InconsistentInvariants(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
