use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{name}` expects {expected} argument(s), got {got}")]
    Arity { name: String, expected: String, got: usize },

    #[error("symbol `{0}` is already declared")]
    Duplicate(String),

    #[error("associative symbol `{0}` is bound to more than one theory")]
    DuplicateTheory(String),

    #[error("malformed precedence: {0}")]
    Precedence(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("constant `{0}` is not known to the ordering")]
    UnknownConstant(String),

    #[error("cannot orient {lhs} = {rhs}: sides are incomparable")]
    Incomparable { lhs: String, rhs: String },

    #[error("undecided: completion diverged")]
    Undecided,

    #[error("operation not supported in {0} mode")]
    UnsupportedMode(String),

    #[error("oracle bound {bound} is too large (universe would exceed {limit} terms); use a bound of at most 7 or fewer constants")]
    BoundTooLarge { bound: usize, limit: usize },

    #[error("term {0} lies outside the oracle universe")]
    OutsideUniverse(String),

    #[error("no fresh constants may be allocated after augmentation")]
    RegistryFrozen,
}

pub type Result<T> = std::result::Result<T, Error>;
