use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),

    #[error("brute-force enumeration needs 1 <= n <= 9 and k >= 1, got n = {n}, k = {k}")]
    EnumerationBound { n: i64, k: i64 },

    #[error("upper parameter a = {0} is positive, the series does not terminate")]
    NonTerminating(i64),

    #[error("lower parameter c = {0} must be a positive integer")]
    ForbiddenLowerParameter(i64),

    #[error("identity needs k >= 2 and n >= 0, got k = {k}, n = {n}")]
    InvalidInstance { k: i64, n: i64 },

    #[error("u-exponent must be non-negative, got {0}")]
    NegativeUExponent(i64),

    #[error("derivative order must be positive, got {0}")]
    DerivativeOrder(i64),

    #[error("coefficient chain needs m >= 1 and 1 <= k <= m + 1, got m = {m}, k = {k}")]
    ChainRange { m: i64, k: i64 },

    #[error("{route}: {detail}")]
    Mismatch { route: &'static str, detail: String },

    #[error("unknown route {0:?}")]
    UnknownRoute(String),
}
