//! Closed-form implied-volatility inversion for the normal model.
//!
//! Two branch-free-per-case methods share one routing scheme on the
//! normalized inputs `(m, c, T)` — absolute moneyness, time value, expiry:
//!
//! * **`lfk2026`** (wide): one degree-10/9 rational in `u = m / c` in the
//!   money, three degree-10/9 rationals in the mapped log-moneyness `eta`
//!   out of the money.
//! * **`lfk2026c`** (compact): splits the in-the-money range at `u = 0.20`
//!   into a degree-4/4 and a degree-9/8 rational; shares the wide method's
//!   out-of-the-money tables bit for bit.
//!
//! Routing: `g = c / m` decides the side (`g > 0.15` is in the money); the
//! out-of-the-money zone index comes from
//! `eta = -(ln g + LOG_ROUTING_OFFSET) / LOG_ROUTING_SCALE`, which maps
//! `g = 0.15` to `eta = 0` and `g = 1e-300` to `eta = 1`. Prices so deep
//! that `eta > 1` (subnormal quotes) evaluate the last zone unclamped —
//! extrapolated but finite and positive down to the smallest subnormal.

pub mod baseline;
pub mod coefficients;

use crate::error::DomainError;
use crate::pricing::{normalize, NormalizedQuote, OptionQuote};
use crate::specfun::INV_SQRT_2PI;
use coefficients::{
    rational, ITM_HIGH_U_DEN, ITM_HIGH_U_NUM, ITM_LOW_U_DEN, ITM_LOW_U_NUM, ITM_THRESHOLD,
    ITM_WIDE_DEN, ITM_WIDE_NUM, LOG_ROUTING_OFFSET, LOG_ROUTING_SCALE, OTM_ZONE1_DEN,
    OTM_ZONE1_NUM, OTM_ZONE2_DEN, OTM_ZONE2_NUM, OTM_ZONE3_DEN, OTM_ZONE3_NUM, U_SPLIT, ZONE1_END,
    ZONE2_END,
};

/// Which closed-form inversion to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Wide tables: one in-the-money rational.
    Lfk2026,
    /// Compact tables: split in-the-money range, shared out-of-the-money.
    Lfk2026c,
}

impl Method {
    /// The identifier used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Method::Lfk2026 => "lfk2026",
            Method::Lfk2026c => "lfk2026c",
        }
    }

    /// Parse a command-line identifier.
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "lfk2026" => Some(Method::Lfk2026),
            "lfk2026c" => Some(Method::Lfk2026c),
            _ => None,
        }
    }

    /// Invert with this method's scalar kernel.
    #[inline]
    pub fn invert(self, moneyness: f64, time_value: f64, expiry: f64) -> f64 {
        match self {
            Method::Lfk2026 => invert_wide(moneyness, time_value, expiry),
            Method::Lfk2026c => invert_compact(moneyness, time_value, expiry),
        }
    }

    /// Invert with branch diagnostics.
    pub fn invert_diagnostic(self, moneyness: f64, time_value: f64, expiry: f64) -> Inversion {
        match self {
            Method::Lfk2026 => invert_wide_diagnostic(moneyness, time_value, expiry),
            Method::Lfk2026c => invert_compact_diagnostic(moneyness, time_value, expiry),
        }
    }
}

/// Which formula branch produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `m == 0`: the exact closed form, no rational involved.
    AtmExact,
    /// Wide method's single in-the-money table.
    Itm,
    /// Compact method's near-the-money table (`u < 0.20`).
    ItmLowU,
    /// Compact method's far table (`u >= 0.20`).
    ItmHighU,
    OtmZone1,
    OtmZone2,
    OtmZone3,
}

impl Branch {
    /// Stable identifier for reports and the command line.
    pub fn tag(self) -> &'static str {
        match self {
            Branch::AtmExact => "ATM_EXACT",
            Branch::Itm => "ITM",
            Branch::ItmLowU => "ITM_LOW_U",
            Branch::ItmHighU => "ITM_HIGH_U",
            Branch::OtmZone1 => "OTM_ZONE1",
            Branch::OtmZone2 => "OTM_ZONE2",
            Branch::OtmZone3 => "OTM_ZONE3",
        }
    }
}

/// An inversion result with its routing diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub sigma: f64,
    pub branch: Branch,
    /// The rational's argument: `u` in the money, `eta` out of the money,
    /// absent at the money.
    pub routing_value: Option<f64>,
}

/// Mapped log-moneyness `eta` for an out-of-the-money quote.
///
/// Splits the logarithm when the ratio `g = c / m` is subnormal (or `c`
/// itself is), where the division has already lost bits.
#[inline(always)]
fn otm_eta(moneyness: f64, time_value: f64, g: f64) -> f64 {
    let log_g = if g < f64::MIN_POSITIVE || time_value < f64::MIN_POSITIVE {
        time_value.ln() - moneyness.ln()
    } else {
        g.ln()
    };
    -(log_g + LOG_ROUTING_OFFSET) / LOG_ROUTING_SCALE
}

/// At-the-money closed form, the exact division pair of the price
/// `v / sqrt(2 pi)`. Round trip with the pricer is within 1 ulp.
#[inline(always)]
fn invert_atm(time_value: f64, expiry: f64) -> f64 {
    (time_value / INV_SQRT_2PI) / expiry.sqrt()
}

/// Shared out-of-the-money evaluation: `sigma = m / sqrt(T) * W_zone(eta)`.
#[inline(always)]
fn invert_otm(moneyness: f64, time_value: f64, expiry: f64, g: f64) -> f64 {
    if time_value == 0.0 {
        return 0.0;
    }
    let eta = otm_eta(moneyness, time_value, g);
    let w = if eta < ZONE1_END {
        rational(&OTM_ZONE1_NUM, &OTM_ZONE1_DEN, eta)
    } else if eta < ZONE2_END {
        rational(&OTM_ZONE2_NUM, &OTM_ZONE2_DEN, eta)
    } else {
        rational(&OTM_ZONE3_NUM, &OTM_ZONE3_DEN, eta)
    };
    moneyness / expiry.sqrt() * w
}

/// Wide-table inversion on normalized inputs.
///
/// Callers are responsible for `m >= 0`, `c >= 0`, `T > 0` (see
/// [`implied_vol`] for the validating entry point).
#[inline]
pub fn invert_wide(moneyness: f64, time_value: f64, expiry: f64) -> f64 {
    if moneyness == 0.0 {
        return invert_atm(time_value, expiry);
    }
    let g = time_value / moneyness;
    if g > ITM_THRESHOLD {
        let u = moneyness / time_value;
        let r = rational(&ITM_WIDE_NUM, &ITM_WIDE_DEN, u);
        return (moneyness + time_value) / expiry.sqrt() * r;
    }
    invert_otm(moneyness, time_value, expiry, g)
}

/// Compact-table inversion on normalized inputs.
///
/// Identical to [`invert_wide`] out of the money (same tables, same code
/// path); in the money it dispatches on `u = m / c` at [`U_SPLIT`].
#[inline]
pub fn invert_compact(moneyness: f64, time_value: f64, expiry: f64) -> f64 {
    if moneyness == 0.0 {
        return invert_atm(time_value, expiry);
    }
    let g = time_value / moneyness;
    if g > ITM_THRESHOLD {
        let u = moneyness / time_value;
        let r = if u < U_SPLIT {
            rational(&ITM_LOW_U_NUM, &ITM_LOW_U_DEN, u)
        } else {
            rational(&ITM_HIGH_U_NUM, &ITM_HIGH_U_DEN, u)
        };
        return (moneyness + time_value) / expiry.sqrt() * r;
    }
    invert_otm(moneyness, time_value, expiry, g)
}

fn otm_branch(eta: f64) -> Branch {
    if eta < ZONE1_END {
        Branch::OtmZone1
    } else if eta < ZONE2_END {
        Branch::OtmZone2
    } else {
        Branch::OtmZone3
    }
}

/// [`invert_wide`] with routing diagnostics.
pub fn invert_wide_diagnostic(moneyness: f64, time_value: f64, expiry: f64) -> Inversion {
    let sigma = invert_wide(moneyness, time_value, expiry);
    if moneyness == 0.0 {
        return Inversion {
            sigma,
            branch: Branch::AtmExact,
            routing_value: None,
        };
    }
    let g = time_value / moneyness;
    if g > ITM_THRESHOLD {
        return Inversion {
            sigma,
            branch: Branch::Itm,
            routing_value: Some(moneyness / time_value),
        };
    }
    let eta = otm_eta(moneyness, time_value, g);
    Inversion {
        sigma,
        branch: otm_branch(eta),
        routing_value: Some(eta),
    }
}

/// [`invert_compact`] with routing diagnostics.
pub fn invert_compact_diagnostic(moneyness: f64, time_value: f64, expiry: f64) -> Inversion {
    let sigma = invert_compact(moneyness, time_value, expiry);
    if moneyness == 0.0 {
        return Inversion {
            sigma,
            branch: Branch::AtmExact,
            routing_value: None,
        };
    }
    let g = time_value / moneyness;
    if g > ITM_THRESHOLD {
        let u = moneyness / time_value;
        let branch = if u < U_SPLIT {
            Branch::ItmLowU
        } else {
            Branch::ItmHighU
        };
        return Inversion {
            sigma,
            branch,
            routing_value: Some(u),
        };
    }
    let eta = otm_eta(moneyness, time_value, g);
    Inversion {
        sigma,
        branch: otm_branch(eta),
        routing_value: Some(eta),
    }
}

/// Validate a quote, reduce it, and invert it.
pub fn implied_vol(quote: &OptionQuote, method: Method) -> Result<Inversion, DomainError> {
    let n = normalize(quote)?;
    Ok(implied_vol_normalized(&n, method))
}

/// Invert an already-normalized quote.
pub fn implied_vol_normalized(n: &NormalizedQuote, method: Method) -> Inversion {
    method.invert_diagnostic(n.moneyness, n.time_value, n.expiry)
}
