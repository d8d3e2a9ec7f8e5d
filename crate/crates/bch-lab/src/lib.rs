//! Workbench for cyclic codes of length (q^m−1)/λ over GF(q), where λ divides q−1.
//!
//! The crate has three layers:
//!
//! * exact arithmetic: table-driven finite fields ([`field`]), univariate
//!   polynomials ([`poly`]), and cyclotomic integers Z[ζ_p] ([`cycint`]) so that
//!   character sums are computed without floating point;
//! * structure theory: q-cyclotomic cosets and their closed-form leader
//!   results ([`cosets`]), BCH code assembly and closed-form dimensions
//!   ([`bch`]);
//! * verification: trace-representation codeword families, quadratic-form
//!   ranks, exponential-sum value distributions, and weight-distribution
//!   evaluation by closed form and by exhaustive enumeration ([`weights`],
//!   [`enumerate`]), plus JSON/CSV reporting ([`report`]).
//!
//! Every closed form ships next to a brute-force oracle; the test suite and
//! the `repro-all` CLI subcommand check them against each other.

pub mod bch;
pub mod cosets;
pub mod cycint;
pub mod enumerate;
pub mod field;
pub mod poly;
pub mod report;
pub mod weights;

/// Default cap on table-based field size q^m (memory bound for log tables).
pub const DEFAULT_MAX_FIELD: u64 = 1 << 24;

/// Default cap on exhaustive enumerations (messages scanned or indices walked).
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("size {0} exceeds the configured cap {1}")]
    SizeExceeded(u128, u128),
    #[error("no primitive polynomial found (internal bug)")]
    NoPrimitivePolyFound,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires an odd prime")]
    EvenPrime,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("product over the coset produced a coefficient outside GF(q) (internal bug)")]
    CoefficientNotInSubfield,
    #[error("divisibility violated: {0}")]
    NotADivisor(String),
    #[error("index {0} out of range for modulus {1}")]
    OutOfRange(u64, u64),
    #[error("operation requires even m")]
    OddM,
    #[error("operation requires odd q")]
    EvenQ,
    #[error("third-largest leader formula requires m >= 6")]
    MTooSmallForDelta3,
    #[error("residue b = {0} of m-1 mod q-1 is not covered (need b in {{0, 1, q-2}})")]
    UnsupportedResidue(u64),
    #[error("operation requires q > 3")]
    QTooSmall,
    #[error("designed distance delta = {0} out of range for n = {1}")]
    BadDelta(u64, u64),
    #[error("parameters outside the proven range: {0}")]
    OutOfProvenRange(String),
    #[error("closed-form dimension for lambda = 1 is not provided; use the brute-force path")]
    LambdaOne,
    #[error("family kind does not match the parity of m")]
    KindParityMismatch,
    #[error("unsupported parameters for this family: {0}")]
    UnsupportedParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
