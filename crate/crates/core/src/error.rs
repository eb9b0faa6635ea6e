use crate::scalar::Overflow;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("budget exceeded: {what} needs {required}, limit is {limit}")]
    BudgetExceeded { what: String, required: u128, limit: u128 },

    #[error("group generated by the given matrices exceeds {0} elements")]
    ExceedsBound(usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("sequence is not exact at {position}: {reason}")]
    NotExact { position: String, reason: String },

    #[error("place {0} is ramified; use the inertia data instead")]
    Ramified(String),

    #[error("bad reduction at {0}")]
    BadReduction(String),

    #[error("residue characteristic {p} divides modulus {n}")]
    CharacteristicClash { p: u64, n: u64 },

    #[error("undecided within search bound: {0}")]
    Inconclusive(String),

    #[error("arbitrary-precision fallback overflowed")]
    Overflow,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl From<Overflow> for Error {
    fn from(_: Overflow) -> Self {
        Error::Overflow
    }
}
