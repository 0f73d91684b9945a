//! Exact Lah numbers, signed Stirling numbers of the first kind, and six
//! independent computational checks of the alternating factorial sum
//!
//! ```text
//! sum_{l=1}^{k} (-1)^l (n+l)! L(k,l) = 0                              if 0 <= n <= k-2
//!                                    = (-1)^k n! (n+1)! / (n-k+1)!    if n >= k-1
//! ```
//!
//! valid for `k >= 2`, `n >= 0`. Everything is computed over unbounded
//! integers and normalized rationals; nothing is ever rounded.

pub mod cli;
pub mod comb;
pub mod error;
pub mod exact;
pub mod report;
pub mod series;
pub mod symbolic;
pub mod verify;

pub use comb::{
    lah, lah_bruteforce, lah_triangle, stirling1, stirling1_from_log_series,
    stirling1_from_rising_poly, stirling1_triangle, Triangle,
};
pub use error::{Error, Result};
pub use exact::{
    binomial, binomial_general, factorial, falling, reciprocal_factorial_weight, rising, Integer,
    Rational,
};
pub use series::{Polynomial, TruncatedSeries};
pub use symbolic::{ExpLaurentExpr, LaurentPoly};
pub use verify::{IdentityInstance, Route, RouteValue, VerificationReport};
