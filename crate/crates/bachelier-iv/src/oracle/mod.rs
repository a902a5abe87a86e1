//! Extended-precision reference implementations.
//!
//! Everything here exists to measure the binary64 pipeline, so accuracy wins
//! over speed: prices are evaluated with guard bits well beyond the working
//! precision, and the reference vol solver iterates until the pricing
//! residual is billions of times smaller than a double ulp.

pub mod big;
pub mod promoted;

use astro_float::BigFloat;

use crate::error::OracleError;
use crate::inversion;
pub use big::BigCtx;

/// Smallest working precision that keeps the residual target meaningful.
pub const MIN_PRECISION_BITS: usize = 256;

/// Configuration for the reference solver.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Working precision in bits for all big-float arithmetic.
    pub precision_bits: usize,
    /// Convergence target: relative pricing residual below `2^-residual_bits`.
    pub residual_bits: u32,
    /// Iteration cap for the safeguarded Newton loop.
    pub max_iterations: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            precision_bits: 512,
            residual_bits: 200,
            max_iterations: 200,
        }
    }
}

impl OracleConfig {
    pub fn with_precision(precision_bits: usize) -> Self {
        OracleConfig {
            precision_bits,
            ..OracleConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.precision_bits < MIN_PRECISION_BITS {
            return Err(OracleError::PrecisionTooLow {
                bits: self.precision_bits,
                min: MIN_PRECISION_BITS,
            });
        }
        Ok(())
    }

    fn ctx(&self) -> BigCtx {
        BigCtx::new(self.precision_bits)
    }
}

/// Scaled complementary error function `exp(y^2) erfc(y)` for `y >= 0`.
///
/// Two independent routes meet at `y = 4`: below, the Maclaurin series of
/// `erf` evaluated with enough guard bits to absorb the `exp(y^2)` blow-up;
/// above, the classical continued fraction evaluated by the modified Lentz
/// recurrence, which needs no guard at all.
pub fn erfcx_big(ctx: &BigCtx, y: &BigFloat) -> Result<BigFloat, OracleError> {
    debug_assert!(!y.is_negative() || y.is_zero());
    if ctx.lt(&ctx.from_f64(4.0), y) {
        erfcx_big_cf(ctx, y)
    } else {
        erfcx_big_series(ctx, y)
    }
}

fn erfcx_big_series(ctx: &BigCtx, y: &BigFloat) -> Result<BigFloat, OracleError> {
    // erfcx(y) = exp(y^2) - (2/sqrt(pi)) * sum_{n>=0} (2 y^2)^n y / (2n+1)!!
    // The sum grows to ~exp(y^2) before the subtraction cancels it back down,
    // so work with ~y^2 * log2(e) extra bits plus slack.
    let y2_f = BigCtx::to_f64(y).powi(2);
    let guard = (y2_f * 1.45).ceil() as usize + 64;
    let w = ctx.widened(guard);

    let y = w.add(y, &w.zero());
    let y2 = w.mul(&y, &y);
    let two_y2 = w.mul(&y2, &w.from_f64(2.0));
    let mut term = y.clone();
    let mut sum = y.clone();
    let limit = -((w.precision() + 8) as i64);
    for n in 1..20_000_u32 {
        term = w.div(&w.mul(&term, &two_y2), &w.from_i64(2 * i64::from(n) + 1));
        sum = w.add(&sum, &term);
        if term.is_zero() {
            break;
        }
        let (te, se) = match (term.exponent(), sum.exponent()) {
            (Some(te), Some(se)) => (i64::from(te), i64::from(se)),
            _ => break,
        };
        if te - se < limit {
            break;
        }
        if n == 19_999 {
            return Err(OracleError::NoConvergence {
                iterations: n as usize,
                residual: f64::NAN,
            });
        }
    }
    let scaled = w.mul(&w.div(&w.from_f64(2.0), &w.sqrt_pi()), &sum);
    let expy2 = w.exp(&y2);
    // One cancelling subtraction, rounded straight into the caller precision.
    Ok(expy2.sub(&scaled, ctx.precision(), astro_float::RoundingMode::ToEven))
}

fn erfcx_big_cf(ctx: &BigCtx, y: &BigFloat) -> Result<BigFloat, OracleError> {
    // erfcx(y) = (1/sqrt(pi)) / (y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
    // via modified Lentz with partial numerators k/2 and denominators y.
    let w = ctx.widened(32);
    let tiny = {
        // 2^-(4 w) is far below any quantity the recurrence produces.
        let mut t = w.from_f64(1.0);
        let scale = w.from_f64(2.0_f64.powi(-1000));
        for _ in 0..(4 * w.precision() / 1000 + 1) {
            t = w.mul(&t, &scale);
        }
        t
    };
    let one = w.from_f64(1.0);
    let b = w.add(y, &w.zero());
    let mut f = b.clone();
    if f.is_zero() {
        f = tiny.clone();
    }
    let mut c = f.clone();
    let mut d = w.zero();
    let eps_exp = -((w.precision() + 8) as i64);
    for k in 1..200_000_u32 {
        let a = w.div(&w.from_i64(i64::from(k)), &w.from_f64(2.0));
        d = w.add(&b, &w.mul(&a, &d));
        if d.is_zero() {
            d = tiny.clone();
        }
        d = w.div(&one, &d);
        c = w.add(&b, &w.div(&a, &c));
        if c.is_zero() {
            c = tiny.clone();
        }
        let delta = w.mul(&c, &d);
        f = w.mul(&f, &delta);
        let dev = w.sub(&delta, &one);
        if dev.is_zero() {
            break;
        }
        if let Some(e) = dev.exponent() {
            if i64::from(e) < eps_exp {
                break;
            }
        } else {
            break;
        }
        if k == 199_999 {
            return Err(OracleError::NoConvergence {
                iterations: k as usize,
                residual: f64::NAN,
            });
        }
    }
    let inv_sqrt_pi = w.div(&one, &w.sqrt_pi());
    Ok(inv_sqrt_pi.div(&f, ctx.precision(), astro_float::RoundingMode::ToEven))
}

/// Standard normal density at `a`, extended precision.
pub fn norm_pdf_big(ctx: &BigCtx, a: &BigFloat) -> BigFloat {
    let half_a2 = ctx.mul(&ctx.mul(a, a), &ctx.from_f64(0.5));
    ctx.div(&ctx.exp(&half_a2.neg()), &ctx.sqrt_2pi())
}

/// At-the-money price `sigma sqrt(T) / sqrt(2 pi)`, extended precision.
pub fn big_atm_price(ctx: &BigCtx, sigma: &BigFloat, expiry: &BigFloat) -> BigFloat {
    let v = ctx.mul(sigma, &ctx.sqrt(expiry));
    ctx.div(&v, &ctx.sqrt_2pi())
}

/// Out-of-the-money time value for moneyness `m >= 0`, extended precision.
///
/// `tv = exp(-a^2/2) (v / sqrt(2 pi) - (m/2) erfcx(a / sqrt 2))`, `a = m / v`.
pub fn big_otm_time_value(
    ctx: &BigCtx,
    moneyness: &BigFloat,
    sigma: &BigFloat,
    expiry: &BigFloat,
) -> Result<BigFloat, OracleError> {
    let w = ctx.widened(64);
    let v = w.mul(sigma, &w.sqrt(expiry));
    if moneyness.is_zero() {
        return Ok(ctx.div(&v, &ctx.sqrt_2pi()));
    }
    let a = w.div(moneyness, &v);
    let y = w.div(&a, &w.sqrt(&w.from_f64(2.0)));
    let ex = erfcx_big(&w, &y)?;
    let lead = w.div(&v, &w.sqrt_2pi());
    let half_m = w.mul(moneyness, &w.from_f64(0.5));
    let bracket = w.sub(&lead, &w.mul(&half_m, &ex));
    let half_a2 = w.mul(&w.mul(&a, &a), &w.from_f64(0.5));
    let damp = w.exp(&half_a2.neg());
    Ok(damp.mul(&bracket, ctx.precision(), astro_float::RoundingMode::ToEven))
}

/// Solve for the volatility that reproduces `time_value` exactly, to a
/// relative pricing residual below `2^-config.residual_bits`.
///
/// Inputs describe an out-of-the-money quote in normalized form:
/// `moneyness >= 0`, `time_value >= 0` (strictly positive unless ATM), both
/// finite binary64 values, plus a positive expiry.
pub fn reference_vol(
    config: &OracleConfig,
    moneyness: f64,
    time_value: f64,
    expiry: f64,
) -> Result<BigFloat, OracleError> {
    config.validate()?;
    let ctx = config.ctx();
    if !(moneyness.is_finite() && time_value.is_finite() && expiry.is_finite())
        || moneyness < 0.0
        || time_value < 0.0
        || expiry <= 0.0
    {
        return Err(OracleError::Unsolvable { time_value });
    }
    let target = ctx.from_f64(time_value);
    reference_vol_target(config, &ctx, moneyness, &target, expiry)
}

/// [`reference_vol`] for an in-the-money quote given as its full price.
///
/// The time value `price - moneyness` is formed in extended precision, so —
/// unlike the binary64 pipeline — no information is lost to the intrinsic
/// subtraction. Scoring the pipeline against this reference therefore charges
/// it for its own subtraction error.
pub fn reference_vol_for_price(
    config: &OracleConfig,
    moneyness: f64,
    price: f64,
    expiry: f64,
) -> Result<BigFloat, OracleError> {
    config.validate()?;
    let ctx = config.ctx();
    if !(moneyness.is_finite() && price.is_finite() && expiry.is_finite())
        || moneyness < 0.0
        || price < moneyness
        || expiry <= 0.0
    {
        return Err(OracleError::Unsolvable {
            time_value: price - moneyness,
        });
    }
    // Exact: both operands are binary64 values.
    let target = ctx.sub(&ctx.from_f64(price), &ctx.from_f64(moneyness));
    reference_vol_target(config, &ctx, moneyness, &target, expiry)
}

fn reference_vol_target(
    config: &OracleConfig,
    ctx: &BigCtx,
    moneyness: f64,
    target: &BigFloat,
    expiry: f64,
) -> Result<BigFloat, OracleError> {
    let ctx = *ctx;
    let m = ctx.from_f64(moneyness);
    let t = ctx.from_f64(expiry);
    let sqrt_t = ctx.sqrt(&t);
    if moneyness == 0.0 {
        // ATM closed form: sigma = c sqrt(2 pi) / sqrt(T).
        return Ok(ctx.div(&ctx.mul(target, &ctx.sqrt_2pi()), &sqrt_t));
    }
    if target.is_zero() {
        return Ok(ctx.zero());
    }
    if target.is_negative() {
        return Err(OracleError::Unsolvable {
            time_value: BigCtx::to_f64(target),
        });
    }

    // Warm start from the binary64 inversion, then bracket and polish.
    let guess = inversion::invert_compact(moneyness, BigCtx::to_f64(target), expiry);
    if !guess.is_finite() || guess <= 0.0 {
        return Err(OracleError::BracketingFailed {
            time_value: BigCtx::to_f64(target),
        });
    }
    let c = target.clone();
    let mut lo = ctx.mul(&ctx.from_f64(guess), &ctx.from_f64(0.5));
    let mut hi = ctx.mul(&ctx.from_f64(guess), &ctx.from_f64(2.0));
    let mut widen = 0;
    while !ctx.lt(&big_otm_time_value(&ctx, &m, &lo, &t)?, &c) {
        lo = ctx.mul(&lo, &ctx.from_f64(0.5));
        widen += 1;
        if widen > 64 {
            return Err(OracleError::BracketingFailed {
                time_value: BigCtx::to_f64(target),
            });
        }
    }
    widen = 0;
    while !ctx.lt(&c, &big_otm_time_value(&ctx, &m, &hi, &t)?) {
        hi = ctx.mul(&hi, &ctx.from_f64(2.0));
        widen += 1;
        if widen > 64 {
            return Err(OracleError::BracketingFailed {
                time_value: BigCtx::to_f64(target),
            });
        }
    }

    let mut sigma = ctx.from_f64(guess);
    if !(ctx.lt(&lo, &sigma) && ctx.lt(&sigma, &hi)) {
        sigma = ctx.mul(&ctx.add(&lo, &hi), &ctx.from_f64(0.5));
    }
    let tol_exp = -i64::from(config.residual_bits);
    let mut last_residual = f64::INFINITY;
    for iteration in 0..config.max_iterations {
        let price = big_otm_time_value(&ctx, &m, &sigma, &t)?;
        let resid = ctx.sub(&price, &c);
        let rel = ctx.div(&resid, &c);
        last_residual = BigCtx::to_f64(&ctx.abs(&rel));
        let small = rel.is_zero()
            || match ctx.abs(&rel).exponent() {
                None => true,
                Some(e) => i64::from(e) <= tol_exp,
            };
        if small {
            return Ok(sigma);
        }
        // Maintain the bracket: tv is strictly increasing in sigma.
        if resid.is_negative() {
            lo = sigma.clone();
        } else {
            hi = sigma.clone();
        }
        let a = ctx.div(&m, &ctx.mul(&sigma, &sqrt_t));
        let vega = ctx.mul(&sqrt_t, &norm_pdf_big(&ctx, &a));
        let step = ctx.div(&resid, &vega);
        let mut next = ctx.sub(&sigma, &step);
        if !(ctx.lt(&lo, &next) && ctx.lt(&next, &hi)) {
            next = ctx.mul(&ctx.add(&lo, &hi), &ctx.from_f64(0.5));
        }
        sigma = next;
        let _ = iteration;
    }
    Err(OracleError::NoConvergence {
        iterations: config.max_iterations,
        residual: last_residual,
    })
}

/// Relative vol error `|estimate / reference - 1|` of a binary64 estimate
/// against an extended-precision reference, computed without cancellation.
pub fn relative_vol_error(config: &OracleConfig, estimate: f64, reference: &BigFloat) -> f64 {
    let ctx = config.ctx();
    if reference.is_zero() {
        return if estimate == 0.0 { 0.0 } else { f64::INFINITY };
    }
    ctx.rel_diff_f64(&ctx.from_f64(estimate), reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ulp_distance;
    use crate::pricing;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn config_rejects_low_precision() {
        let c = OracleConfig::with_precision(128);
        assert!(matches!(
            c.validate(),
            Err(OracleError::PrecisionTooLow {
                bits: 128,
                min: 256
            })
        ));
        assert!(OracleConfig::with_precision(256).validate().is_ok());
    }

    #[test]
    fn erfcx_routes_agree_at_seam() {
        // Evaluate y = 4 through both routes explicitly; they share nothing
        // but the backend, so agreement to ~prec bits validates both.
        let ctx = BigCtx::new(320);
        let y = ctx.from_f64(4.0);
        let series = erfcx_big_series(&ctx, &y).unwrap();
        let cf = erfcx_big_cf(&ctx, &y).unwrap();
        assert!(ctx.rel_diff_f64(&series, &cf) < 1e-90);
    }

    #[test]
    fn erfcx_big_matches_double_implementation() {
        let ctx = BigCtx::new(320);
        for y in [0.0, 0.1, 0.46875, 1.0, 2.5, 4.0, 4.5, 10.0, 20.0, 37.0] {
            let big = erfcx_big(&ctx, &ctx.from_f64(y)).unwrap();
            let rounded = big::BigCtx::to_f64(&big);
            let ours = crate::specfun::erfcx(y);
            assert!(
                ulp_distance(rounded, ours) <= 2,
                "erfcx({y}): oracle {rounded:e} vs double {ours:e}"
            );
        }
    }

    #[test]
    fn big_time_value_matches_double_pricer() {
        let ctx = BigCtx::new(320);
        for (m, sigma, t) in [
            (0.5, 1.0, 1.0),
            (3.0, 2.0, 0.25),
            (8.0, 1.0, 1.0),
            (1.0, 0.02, 4.0),
            (31.0, 1.0, 1.0),
        ] {
            let big = big_otm_time_value(
                &ctx,
                &ctx.from_f64(m),
                &ctx.from_f64(sigma),
                &ctx.from_f64(t),
            )
            .unwrap();
            let rounded = big::BigCtx::to_f64(&big);
            let ours = pricing::otm_time_value(m, sigma, t).unwrap();
            let a = m / (sigma * t.sqrt());
            let budget = (4.0 + 4.0 * a * a) as u64;
            assert!(
                ulp_distance(rounded, ours) <= budget,
                "tv(m={m}, sigma={sigma}, t={t}): {rounded:e} vs {ours:e}"
            );
        }
    }

    #[test]
    fn reference_vol_recovers_known_sigma() {
        let config = cfg();
        let ctx = BigCtx::new(config.precision_bits);
        // Correctly rounded inputs from sigma = 1: the recovered vol must sit
        // within one rounding's worth of 1.
        for m in [0.5, 1.0, 3.0, 8.0] {
            let tv_big = big_otm_time_value(
                &ctx,
                &ctx.from_f64(m),
                &ctx.from_f64(1.0),
                &ctx.from_f64(1.0),
            )
            .unwrap();
            let tv = big::BigCtx::to_f64(&tv_big);
            let sigma = reference_vol(&config, m, tv, 1.0).unwrap();
            let err = relative_vol_error(&config, 1.0, &sigma);
            // Input rounding alone can move the implied vol by ~a^2 ulps.
            let a = m;
            assert!(
                err <= (4.0 + 4.0 * a * a) * 2.0_f64.powi(-53),
                "m={m}: relative error {err:e}"
            );
        }
    }

    #[test]
    fn reference_vol_residual_meets_target() {
        let config = cfg();
        let ctx = BigCtx::new(config.precision_bits);
        let tol = 2.0_f64.powi(-(config.residual_bits as i32));
        for (m, tv, t) in [
            (0.5, 0.19779655740130603, 1.0),
            (2.0, 0.0747003250035696, 5.0),
            (10.0, 7.474560254589328e-25, 1.0),
        ] {
            let sigma = reference_vol(&config, m, tv, t).unwrap();
            let price =
                big_otm_time_value(&ctx, &ctx.from_f64(m), &sigma, &ctx.from_f64(t)).unwrap();
            let rel = ctx.rel_diff_f64(&price, &ctx.from_f64(tv));
            assert!(rel < tol, "m={m}: residual {rel:e} above 2^-200");
        }
    }

    #[test]
    fn reference_vol_atm_closed_form() {
        let config = cfg();
        let sigma = reference_vol(&config, 0.0, 0.3989422804014327, 1.0).unwrap();
        let err = relative_vol_error(&config, 1.0, &sigma);
        assert!(err < 1e-16, "ATM reference off by {err:e}");
        assert_eq!(
            big::BigCtx::to_f64(&reference_vol(&config, 3.0, 0.0, 1.0).unwrap()),
            0.0
        );
    }

    #[test]
    fn reference_vol_for_price_subtracts_exactly() {
        let config = cfg();
        // An in-the-money quote at m = 2 whose double subtraction is exact:
        // solving from the full price and from the separated time value must
        // agree to the working precision.
        let tv = 0.008491404416690038;
        let price = 2.0 + tv;
        let from_price = reference_vol_for_price(&config, 2.0, price, 1.0).unwrap();
        let from_tv = reference_vol(&config, 2.0, price - 2.0, 1.0).unwrap();
        let ctx = BigCtx::new(config.precision_bits);
        assert!(ctx.rel_diff_f64(&from_price, &from_tv) < 1e-70);
        // Degenerate full price: all value is intrinsic.
        assert_eq!(
            big::BigCtx::to_f64(&reference_vol_for_price(&config, 9.0, 9.0, 1.0).unwrap()),
            0.0
        );
        assert!(matches!(
            reference_vol_for_price(&config, 2.0, 1.9, 1.0),
            Err(OracleError::Unsolvable { .. })
        ));
    }

    #[test]
    fn reference_vol_rejects_bad_inputs() {
        let config = cfg();
        assert!(matches!(
            reference_vol(&config, -1.0, 0.1, 1.0),
            Err(OracleError::Unsolvable { .. })
        ));
        assert!(matches!(
            reference_vol(&config, f64::NAN, 0.1, 1.0),
            Err(OracleError::Unsolvable { .. })
        ));
        assert!(matches!(
            reference_vol(&config, 1.0, 0.1, 0.0),
            Err(OracleError::Unsolvable { .. })
        ));
    }

    #[test]
    fn precision_levels_agree() {
        let lo = OracleConfig::with_precision(256);
        let hi = OracleConfig::default();
        let s_lo = reference_vol(&lo, 2.0, 0.0747003250035696, 5.0).unwrap();
        let s_hi = reference_vol(&hi, 2.0, 0.0747003250035696, 5.0).unwrap();
        let ctx = BigCtx::new(512);
        assert!(ctx.rel_diff_f64(&s_lo, &s_hi) < 1e-60);
    }
}
