//! Error types for quote validation, the extended-precision oracle, the
//! coefficient-table loader, and the measurement harness.

use thiserror::Error;

/// Rejected option-quote or pricing input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    /// An input field is NaN or infinite.
    #[error("non-finite input: {field} = {value}")]
    NonFinite { field: &'static str, value: f64 },

    /// Negative volatility has no meaning in the normal model.
    #[error("negative volatility: {sigma}")]
    NegativeVolatility { sigma: f64 },

    /// Expiries must be strictly positive to invert a price.
    #[error("non-positive expiry: {expiry}")]
    NonPositiveExpiry { expiry: f64 },

    /// Prices below intrinsic value admit no volatility.
    #[error("price {price} is below intrinsic value {intrinsic}")]
    PriceBelowIntrinsic { price: f64, intrinsic: f64 },

    /// Absolute moneyness must be non-negative.
    #[error("negative moneyness: {value}")]
    NegativeMoneyness { value: f64 },
}

/// Failure inside the extended-precision reference solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// Working precision below the supported minimum.
    #[error("precision {bits} bits is below the {min} bit minimum")]
    PrecisionTooLow { bits: usize, min: usize },

    /// Could not enclose the root while doubling the search bracket.
    #[error("failed to bracket the volatility for time value {time_value}")]
    BracketingFailed { time_value: f64 },

    /// Newton/bisection exhausted its iteration budget.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// The inputs admit no positive volatility (e.g. zero or negative time value).
    #[error("time value {time_value} admits no positive volatility")]
    Unsolvable { time_value: f64 },
}

/// Malformed coefficient-table file.
#[derive(Debug, Error)]
pub enum TableError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    /// A line outside any `[section]` or an unparsable number.
    #[error("line {line}: expected a number or section header, got {text:?}")]
    BadLine { line: usize, text: String },

    /// A section did not contain numerator and denominator blocks.
    #[error("section [{section}]: expected two blocks separated by a blank line, found {blocks}")]
    BlockCount { section: String, blocks: usize },

    /// Denominators are normalized; the leading coefficient must be exactly 1.
    #[error("section [{section}]: leading denominator coefficient is {value}, expected 1")]
    DenominatorNotNormalized { section: String, value: f64 },

    /// A required section is absent.
    #[error("missing section [{section}]")]
    MissingSection { section: &'static str },

    /// A coefficient is NaN or infinite.
    #[error("section [{section}]: non-finite coefficient {value}")]
    NonFiniteCoefficient { section: String, value: f64 },
}

/// Failure while building or scoring a measurement suite.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// A price window would cross zero or leave the finite range.
    #[error("cannot build a {count}-point window around {center:e}")]
    DegenerateWindow { center: f64, count: usize },

    /// Filesystem failure, tagged with the path being written.
    #[error("i/o on {}: {source}", path.display())]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Failure in the scalar timing harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    /// The system clock is too coarse to resolve a measurement round.
    #[error("clock granularity {granularity_ns} ns exceeds 1% of a round ({round_ns} ns)")]
    ClockResolution {
        granularity_ns: u128,
        round_ns: u128,
    },

    /// Empty pools or zero rounds/calls cannot be timed.
    #[error("invalid timing configuration: {reason}")]
    InvalidConfig { reason: &'static str },
}
