//! Extended-precision twins of the binary64 inversion methods.
//!
//! The fitted table coefficients enter exactly as shipped — decimal literals
//! rounded once to binary64, then promoted — while everything structural
//! (routing constants, zone boundaries, the ATM closed form) is computed
//! exactly at the context precision. The difference to the reference vol
//! therefore isolates the *approximation* error of the fitted rationals from
//! the rounding noise of the double pipeline, which is what the dense
//! profile suites report.
//!
//! The routing constants deserve the emphasis: the double kernel bakes
//! `-ln(0.15)` and the mapped-range width in as correctly rounded binary64
//! constants, but promoting those rounded values here would perturb `eta` by
//! ~1e-18 and, through the steep zone-2 rational, shift measured errors by
//! several 1e-17 — enough to move the worst dense-grid point. This twin
//! derives them from the exact decimal `3/20` instead.

use astro_float::BigFloat;

use crate::inversion::coefficients::{
    ITM_HIGH_U_DEN, ITM_HIGH_U_NUM, ITM_LOW_U_DEN, ITM_LOW_U_NUM, ITM_WIDE_DEN, ITM_WIDE_NUM,
    OTM_ZONE1_DEN, OTM_ZONE1_NUM, OTM_ZONE2_DEN, OTM_ZONE2_NUM, OTM_ZONE3_DEN, OTM_ZONE3_NUM,
};
use crate::inversion::Method;

use super::big::BigCtx;

fn horner_big(ctx: &BigCtx, coeffs: &[f64], y: &BigFloat) -> BigFloat {
    let mut acc = ctx.zero();
    for &c in coeffs.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, y), &ctx.from_f64(c));
    }
    acc
}

fn rational_big(ctx: &BigCtx, num: &[f64], den: &[f64], y: &BigFloat) -> BigFloat {
    ctx.div(&horner_big(ctx, num, y), &horner_big(ctx, den, y))
}

/// Exact ratio `p / q` at context precision.
fn ratio(ctx: &BigCtx, p: i64, q: i64) -> BigFloat {
    ctx.div(&ctx.from_i64(p), &ctx.from_i64(q))
}

/// Promoted inversion on exactly promoted binary64 inputs.
pub fn promoted_invert(
    ctx: &BigCtx,
    method: Method,
    moneyness: f64,
    time_value: f64,
    expiry: f64,
) -> BigFloat {
    debug_assert!(moneyness >= 0.0 && time_value >= 0.0 && expiry > 0.0);
    let t = ctx.from_f64(expiry);
    let sqrt_t = ctx.sqrt(&t);
    let c = ctx.from_f64(time_value);
    if moneyness == 0.0 {
        // Exact ATM closed form: sigma = c sqrt(2 pi) / sqrt(T).
        return ctx.div(&ctx.mul(&c, &ctx.sqrt_2pi()), &sqrt_t);
    }
    if time_value == 0.0 {
        return ctx.zero();
    }
    let m = ctx.from_f64(moneyness);
    let g = ctx.div(&c, &m);
    if ctx.lt(&ratio(ctx, 3, 20), &g) {
        let u = ctx.div(&m, &c);
        let r = match method {
            Method::Lfk2026 => rational_big(ctx, &ITM_WIDE_NUM, &ITM_WIDE_DEN, &u),
            Method::Lfk2026c => {
                if ctx.lt(&u, &ratio(ctx, 1, 5)) {
                    rational_big(ctx, &ITM_LOW_U_NUM, &ITM_LOW_U_DEN, &u)
                } else {
                    rational_big(ctx, &ITM_HIGH_U_NUM, &ITM_HIGH_U_DEN, &u)
                }
            }
        };
        let straddle = ctx.add(&m, &c);
        return ctx.mul(&ctx.div(&straddle, &sqrt_t), &r);
    }
    // eta = -(ln g - ln(3/20)) / (300 ln 10 + ln(3/20)), all exact.
    let ln_alpha = ctx.ln(&ratio(ctx, 3, 20));
    let scale = ctx.add(
        &ctx.mul(&ctx.from_i64(300), &ctx.ln(&ctx.from_i64(10))),
        &ln_alpha,
    );
    let eta = ctx.div(&ctx.sub(&ln_alpha, &ctx.ln(&g)), &scale);
    let (num, den): (&[f64], &[f64]) = if ctx.lt(&eta, &ratio(ctx, 11, 1000)) {
        (&OTM_ZONE1_NUM, &OTM_ZONE1_DEN)
    } else if ctx.lt(&eta, &ratio(ctx, 21, 200)) {
        (&OTM_ZONE2_NUM, &OTM_ZONE2_DEN)
    } else {
        (&OTM_ZONE3_NUM, &OTM_ZONE3_DEN)
    };
    let w = rational_big(ctx, num, den, &eta);
    ctx.mul(&ctx.div(&m, &sqrt_t), &w)
}
