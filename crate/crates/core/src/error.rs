use thiserror::Error;

/// Errors raised by the algebra kernels, the constructors and the front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HkError {
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharMismatch(u32, u32),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("monomial does not divide")]
    NotDivisible,
    #[error("exponent overflow (components are limited to 16 bits)")]
    ExponentOverflow,
    #[error("quotient is not Artinian: staircase has infinitely many monomials")]
    InfiniteLength,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("{q} is not a positive power of the characteristic {p}")]
    NotFrobeniusPower { q: u64, p: u32 },
    #[error("ideal is not primary to the irrelevant maximal ideal")]
    NotPrimary,
    #[error("ring has Krull dimension 0")]
    ZeroDimensionalRing,
    #[error("estimation method needs {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("invalid dimension data: {0}")]
    BadDims(String),
    #[error("generator {0} has a nonzero constant term")]
    NotLocalInput(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{context}: {source}")]
    Context {
        context: String,
        source: Box<HkError>,
    },
    #[error("{line}:{col}: {source}")]
    At {
        line: usize,
        col: usize,
        source: Box<HkError>,
    },
}

impl HkError {
    /// Process exit code for this error: 3 for resource limits, 2 for input problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            HkError::ExponentOverflow => 3,
            HkError::At { source, .. } | HkError::Context { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

pub type Result<T, E = HkError> = std::result::Result<T, E>;

/// Attaches a description of the failing step to an error.
pub(crate) trait WithContext<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T>;
}

impl<T> WithContext<T> for Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|e| HkError::Context {
            context: what(),
            source: Box::new(e),
        })
    }
}
