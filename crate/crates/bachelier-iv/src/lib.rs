//! Implied volatility for the Bachelier (normal) model, inverted in closed
//! form.
//!
//! The normal-model price of an undiscounted vanilla option is
//! `C = x Phi(d) + v phi(d)` with `x = F - K`, `v = sigma sqrt(T)`, and
//! `d = x / v`. This crate recovers `sigma` from a quoted price with two
//! branch-free-per-zone rational approximations — no iteration, no lookup
//! beyond a handful of fitted coefficient tables:
//!
//! * [`Method::Lfk2026`] — wide tables: one in-the-money rational and three
//!   out-of-the-money zones.
//! * [`Method::Lfk2026c`] — compact tables: a split in-the-money range with
//!   lower degrees, sharing the out-of-the-money tables bit for bit.
//!
//! Supporting the inversion:
//!
//! * [`pricing`] — a cancellation-free forward pricer built on the scaled
//!   complementary error function, stable from at-the-money through deeply
//!   in- or out-of-the-money quotes.
//! * [`specfun`] — `erfcx`, `exp(-x^2/2)`, and a tail-accurate normal CDF
//!   with tight, tested error bounds.
//! * [`oracle`] — an extended-precision (default 512-bit) reference solver
//!   used to score everything else, plus a promoted-precision twin of the
//!   inversion for isolating coefficient-fit error.
//! * [`harness`] — the accuracy suites, aggregation, and report writers.
//! * [`bench`] — a rotated-order scalar timing harness.
//!
//! # Example
//!
//! ```
//! use bachelier_iv::{implied_vol, Method, OptionKind, OptionQuote};
//!
//! // An out-of-the-money call quoted at its correctly rounded model price
//! // for sigma = 1: the inversion recovers the volatility to ~1e-16.
//! let quote = OptionQuote {
//!     forward: 1.0,
//!     strike: 2.0,
//!     expiry: 1.0,
//!     price: 0.0833154705876863,
//!     kind: OptionKind::Call,
//! };
//! let result = implied_vol(&quote, Method::Lfk2026c).unwrap();
//! assert!((result.sigma - 1.0).abs() < 5e-15);
//! ```
//!
//! # Feature flags
//!
//! * `parallel` (default) — score harness suites with a data-parallel map;
//!   disabling it swaps in an equivalent sequential path.

pub mod bench;
pub mod error;
pub mod harness;
pub mod inversion;
pub mod oracle;
pub mod pricing;
pub mod specfun;

pub use error::{BenchError, DomainError, HarnessError, OracleError, TableError};
pub use inversion::{implied_vol, implied_vol_normalized, Branch, Inversion, Method};
pub use pricing::{
    bachelier_call, bachelier_put, normalize, NormalizedQuote, OptionKind, OptionQuote,
};
