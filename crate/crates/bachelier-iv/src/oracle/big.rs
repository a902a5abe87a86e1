//! Thin context over the arbitrary-precision backend.
//!
//! All operations round to nearest-even at the context's working precision.
//! Shared transcendental constants are cached per thread so parallel suite
//! runs never contend on a lock. [`BigCtx::to_f64`] converts back to binary64
//! with a hand-rolled round-to-nearest-even over the raw mantissa words —
//! including the subnormal range — because the backend offers no correctly
//! rounded narrowing conversion; a dual-route test cross-checks it against
//! the decimal format/parse route.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(
        Consts::new().expect("constant cache allocation"),
    );
}

/// Arithmetic context: a fixed working precision in bits.
#[derive(Debug, Clone, Copy)]
pub struct BigCtx {
    prec: usize,
}

impl BigCtx {
    pub fn new(prec: usize) -> Self {
        BigCtx { prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Widen the context by `extra` guard bits.
    pub fn widened(&self, extra: usize) -> Self {
        BigCtx {
            prec: self.prec + extra,
        }
    }

    /// Promote a binary64 value exactly.
    ///
    /// The backend promotes subnormal magnitudes at half their value (its
    /// exponent for `5e-324` comes out one too low), so those are lifted into
    /// the normal range first and rescaled back with exact power-of-two
    /// factors. Signed zero collapses to the backend's single zero.
    pub fn from_f64(&self, x: f64) -> BigFloat {
        if x != 0.0 && x.abs() < f64::MIN_POSITIVE {
            // 2^537 twice clears the whole subnormal range (2^-1074 * 2^1074
            // = 1) without overflowing; every step is a power-of-two scale of
            // a normal value and therefore exact.
            const UP: f64 = 2.2494568972715982e161; // 2^536
            const DOWN: f64 = 4.445517498970155e-162; // 2^-536, exact inverse
            debug_assert!(UP == 2.0_f64.powi(536) && DOWN == 2.0_f64.powi(-536));
            let lifted = BigFloat::from_f64(x * UP * UP, self.prec);
            let down = BigFloat::from_f64(DOWN, self.prec);
            return lifted.mul(&down, self.prec, RM).mul(&down, self.prec, RM);
        }
        BigFloat::from_f64(x, self.prec)
    }

    /// Promote a small integer exactly.
    pub fn from_i64(&self, n: i64) -> BigFloat {
        debug_assert!(n.unsigned_abs() < (1 << 53));
        BigFloat::from_f64(n as f64, self.prec)
    }

    pub fn zero(&self) -> BigFloat {
        self.from_f64(0.0)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        CONSTS.with(|cc| a.exp(self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        CONSTS.with(|cc| a.ln(self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn pi(&self) -> BigFloat {
        CONSTS.with(|cc| cc.borrow_mut().pi(self.prec, RM))
    }

    /// `sqrt(2 pi)` at working precision.
    pub fn sqrt_2pi(&self) -> BigFloat {
        let two_pi = self.mul(&self.from_f64(2.0), &self.pi());
        self.sqrt(&two_pi)
    }

    /// `sqrt(pi)` at working precision.
    pub fn sqrt_pi(&self) -> BigFloat {
        self.sqrt(&self.pi())
    }

    /// `|a|`.
    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        if a.is_negative() {
            a.neg()
        } else {
            a.clone()
        }
    }

    /// Strict `a < b`. Any comparison involving NaN is false.
    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.partial_cmp(b), Some(std::cmp::Ordering::Less))
    }

    /// Relative difference `|a - b| / |b|` narrowed to binary64.
    pub fn rel_diff_f64(&self, a: &BigFloat, b: &BigFloat) -> f64 {
        let num = self.abs(&self.sub(a, b));
        let den = self.abs(b);
        Self::to_f64(&self.div(&num, &den))
    }

    /// Round a big value to the nearest binary64, ties to even.
    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_inf_pos() {
            return f64::INFINITY;
        }
        if x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if x.is_zero() {
            return if x.is_negative() { -0.0 } else { 0.0 };
        }
        let (words, _prec, sign, exp, _inexact) =
            x.as_raw_parts().expect("finite non-zero has raw parts");
        // Value = 0.mantissa * 2^exp with the top mantissa bit set; assemble
        // the leading 128 bits, everything lower collapses into `sticky`.
        let n = words.len();
        let hi = (words[n - 1] as u128) << 64 | if n >= 2 { words[n - 2] as u128 } else { 0 };
        let mut sticky = words[..n.saturating_sub(2)].iter().any(|&w| w != 0);
        let exp = i64::from(exp);
        let negative = sign == Sign::Neg;

        let compose =
            |bits: u64| -> f64 { f64::from_bits(bits | if negative { 1u64 << 63 } else { 0 }) };

        if exp > 1024 {
            // Above the largest binade: saturate.
            return compose(0x7ff0_0000_0000_0000);
        }
        // Number of mantissa bits the target format keeps for this exponent:
        // 53 in the normal range, fewer once the value dips subnormal.
        let keep = if exp >= -1021 {
            53
        } else {
            let k = exp + 1074;
            if k < 0 {
                return compose(0); // Underflows to zero even after rounding.
            }
            if k == 0 {
                // Value in [2^-1075, 2^-1074): halfway at most; round to even
                // gives zero unless strictly above the midpoint.
                let above_half = hi > (1u128 << 127) || (hi == (1u128 << 127) && sticky);
                return compose(u64::from(above_half));
            }
            k as u32
        };

        let mant = (hi >> (128 - keep)) as u64;
        let guard = (hi >> (127 - keep)) & 1 == 1;
        sticky |= hi & ((1u128 << (127 - keep)) - 1) != 0;
        let mut mant = mant;
        if guard && (sticky || mant & 1 == 1) {
            mant += 1;
        }

        if exp >= -1021 {
            // mant is in [2^52, 2^53]; a carry to 2^53 bumps the binade.
            let (mant, exp) = if mant == 1u64 << 53 {
                (mant >> 1, exp + 1)
            } else {
                (mant, exp)
            };
            if exp > 1024 {
                return compose(0x7ff0_0000_0000_0000);
            }
            let biased = (exp - 1 + 1023) as u64;
            compose(biased << 52 | (mant & ((1u64 << 52) - 1)))
        } else {
            // Subnormal composition; a carry to 2^52 lands exactly on the
            // smallest normal, which the same bit pattern encodes.
            compose(mant)
        }
    }
}
