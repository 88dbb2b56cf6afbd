use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator of {0} is divisible by p = {1}")]
    DenominatorDivisibleByP(String, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: no known digits remain")]
    PrecisionExhausted,
    #[error("insufficient precision: need mod p^{needed}, have p^{available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("operands live in different fields (p = {0} vs p = {1})")]
    PrimeMismatch(u64, u64),
    #[error("{p}^{k} does not fit the single-word residue range")]
    RangeOverflow { p: u64, k: u32 },
    #[error("p = {0} must be an odd prime")]
    InvalidPrime(u64),
    #[error("gamma table has no entry for {0}")]
    MissingArgument(String),
    #[error("Teichmuller character evaluated at 0")]
    ZeroArgument,
    #[error("both characters are trivial")]
    BothTrivial,
    #[error("j = {j} out of range for p = {p}")]
    JOutOfRange { j: i64, p: u64 },
    #[error("term {0} of the truncated series has a denominator divisible by p")]
    NonInvertibleDenominator(usize),
    #[error("lower parameter {0} is zero or a negative integer")]
    InvalidLowerParameter(String),
    #[error("integer overflow in q-series arithmetic")]
    IntegerOverflow,
    #[error("eta prefactor {0}/24 is not an integer")]
    NonIntegralPrefactor(i64),
    #[error("coefficient {n} is beyond the cached expansion (nmax = {nmax})")]
    BeyondCache { n: usize, nmax: usize },
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error("unsupported cache version {0}")]
    VersionMismatch(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
