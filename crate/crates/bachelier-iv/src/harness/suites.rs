//! Test-case generators for the accuracy suites.
//!
//! Every case lives in normalized quote space: a moneyness `m = |F - K|`, a
//! quoted value (either the out-of-the-money time value itself or a full
//! in-the-money price), and an expiry. Window suites expand a correctly
//! rounded base value into 256 consecutive binary64 neighbours so the grid
//! probes the formula's behaviour across an entire ulp neighbourhood rather
//! than at one lucky point.

use crate::error::HarnessError;
use crate::inversion::coefficients::{
    ITM_THRESHOLD, LOG_ROUTING_OFFSET, LOG_ROUTING_SCALE, ZONE1_END, ZONE2_END,
};
use crate::oracle::big::BigCtx;
use crate::oracle::{big_atm_price, big_otm_time_value, OracleConfig};
use crate::pricing::{atm_price, otm_time_value};

use super::run::Scoring;
use super::ulp_window;

/// Number of consecutive binary64 values in one window.
pub const WINDOW: usize = 256;

/// How a case presents its value to the inversion pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuoteForm {
    /// `value` is the out-of-the-money time value itself.
    TimeValue,
    /// `value` is a full in-the-money price; the binary64 pipeline must
    /// subtract the intrinsic part `moneyness` first and is charged for any
    /// cancellation that subtraction causes.
    FullPrice,
}

/// One generated accuracy case.
#[derive(Debug, Clone)]
pub struct TestCase {
    /// Stable identifier, unique within its suite.
    pub id: String,
    /// Normalized moneyness `|F - K| >= 0`.
    pub moneyness: f64,
    /// Quoted value; interpretation depends on `form`.
    pub value: f64,
    /// Whether `value` is a time value or a full price.
    pub form: QuoteForm,
    /// Time to expiry, in years.
    pub expiry: f64,
    /// Nominal standardized moneyness label. Only its sign is load-bearing:
    /// negative marks out-of-the-money provenance, positive a reflected
    /// in-the-money quote, zero at the money. The reported worst-case `d` is
    /// recomputed from the oracle volatility, not read from this label.
    pub d_label: f64,
    /// How the case is scored.
    pub scoring: Scoring,
    /// Degenerate cases (value rounding destroyed the volatility information,
    /// or the construction collapsed) are checked for totality only.
    pub degenerate: bool,
}

impl TestCase {
    /// The time value the binary64 pipeline sees.
    pub fn pipeline_time_value(&self) -> f64 {
        match self.form {
            QuoteForm::TimeValue => self.value,
            QuoteForm::FullPrice => self.value - self.moneyness,
        }
    }
}

/// The accuracy suites, named as on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// 16 strikes at `F = sigma = T = 1`, full prices windowed by 256.
    StrikeGrid,
    /// 12 deep in-the-money strikes, reflected; time values windowed by 256.
    DeepItmReflection,
    /// 15 standardized moneyness values, time values windowed by 256.
    DirectOtm,
    /// Uniform `|d| <= 8` grid, step 0.025, promoted-fit scoring.
    Dense8,
    /// Uniform `|d| <= 30` grid, step 0.025, promoted-fit scoring.
    Dense30,
    /// 29 fixed nodes out to `|d| = 35`, promoted-fit scoring.
    FixedTail,
    /// Totality suite: extreme, boundary-straddling, and scaled cases.
    Adversarial,
}

impl Suite {
    /// Every suite, in reporting order.
    pub const ALL: [Suite; 7] = [
        Suite::StrikeGrid,
        Suite::DeepItmReflection,
        Suite::DirectOtm,
        Suite::Dense8,
        Suite::Dense30,
        Suite::FixedTail,
        Suite::Adversarial,
    ];

    /// The identifier used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Suite::StrikeGrid => "strike",
            Suite::DeepItmReflection => "reflection",
            Suite::DirectOtm => "direct",
            Suite::Dense8 => "dense8",
            Suite::Dense30 => "dense30",
            Suite::FixedTail => "tail",
            Suite::Adversarial => "adversarial",
        }
    }

    /// Parse a command-line identifier.
    pub fn parse(name: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Generate the cases of `suite`, using the oracle pricer at the configured
/// precision for every base value that must be correctly rounded.
pub fn generate(suite: Suite, config: &OracleConfig) -> Result<Vec<TestCase>, HarnessError> {
    config.validate()?;
    let ctx = BigCtx::new(config.precision_bits);
    match suite {
        Suite::StrikeGrid => strike_grid(&ctx),
        Suite::DeepItmReflection => deep_itm_reflection(&ctx),
        Suite::DirectOtm => direct_otm(&ctx),
        Suite::Dense8 => dense_grid(&ctx, Suite::Dense8, 8.0),
        Suite::Dense30 => dense_grid(&ctx, Suite::Dense30, 30.0),
        Suite::FixedTail => fixed_tail(&ctx),
        Suite::Adversarial => adversarial(&ctx),
    }
}

/// Out-of-the-money time value at `sigma = T = 1`, correctly rounded once.
fn rounded_time_value(ctx: &BigCtx, m: f64) -> Result<f64, HarnessError> {
    let one = ctx.from_f64(1.0);
    let tv = big_otm_time_value(ctx, &ctx.from_f64(m), &one, &one)?;
    Ok(BigCtx::to_f64(&tv))
}

/// Full in-the-money price `m + tv` at `sigma = T = 1`, formed in extended
/// precision and rounded once.
fn rounded_full_price(ctx: &BigCtx, m: f64) -> Result<f64, HarnessError> {
    let one = ctx.from_f64(1.0);
    let tv = big_otm_time_value(ctx, &ctx.from_f64(m), &one, &one)?;
    Ok(BigCtx::to_f64(&ctx.add(&ctx.from_f64(m), &tv)))
}

/// Expand `center` into a 256-value window of cases at `sigma = T = 1`.
fn push_window(
    cases: &mut Vec<TestCase>,
    prefix: &str,
    m: f64,
    center: f64,
    form: QuoteForm,
    d_label: f64,
) -> Result<(), HarnessError> {
    let below = (WINDOW / 2) as isize;
    for (i, value) in ulp_window(center, WINDOW)?.into_iter().enumerate() {
        let offset = i as isize - below;
        let degenerate = form == QuoteForm::FullPrice && value - m <= 0.0;
        cases.push(TestCase {
            id: format!("{prefix}/u{offset:+04}"),
            moneyness: m,
            value,
            form,
            expiry: 1.0,
            d_label,
            scoring: Scoring::DoublePipeline,
            degenerate,
        });
    }
    Ok(())
}

/// Strike grid: 16 strikes at `F = 1`, the quoted PRICE windowed by 256.
/// In-the-money strikes quote full prices, so the pipeline pays for its own
/// intrinsic subtraction.
fn strike_grid(ctx: &BigCtx) -> Result<Vec<TestCase>, HarnessError> {
    // (strike label, m = |1 - K|) for F = 1; price quotes are OTM time
    // values for K > 1 and full prices for K < 1.
    const OTM: [(&str, f64); 9] = [
        ("1.001", 0.001),
        ("1.01", 0.01),
        ("1.1", 0.1),
        ("1.5", 0.5),
        ("2", 1.0),
        ("3", 2.0),
        ("5", 4.0),
        ("7", 6.0),
        ("8", 7.0),
    ];
    const ITM: [(&str, f64); 7] = [
        ("0.999", 0.001),
        ("0.99", 0.01),
        ("0.9", 0.1),
        ("0.5", 0.5),
        ("0", 1.0),
        ("-0.5", 1.5),
        ("-1", 2.0),
    ];
    let mut cases = Vec::with_capacity((OTM.len() + ITM.len()) * WINDOW);
    for (label, m) in OTM {
        let center = rounded_time_value(ctx, m)?;
        push_window(
            &mut cases,
            &format!("strike/k{label}"),
            m,
            center,
            QuoteForm::TimeValue,
            -m,
        )?;
    }
    for (label, m) in ITM {
        let center = rounded_full_price(ctx, m)?;
        push_window(
            &mut cases,
            &format!("strike/k{label}"),
            m,
            center,
            QuoteForm::FullPrice,
            m,
        )?;
    }
    Ok(cases)
}

/// Deep in-the-money strikes `K in {-1, ..., -30}` at `F = 1`, reduced by the
/// strike reflection `2F - K` to out-of-the-money quotes; the reflected TIME
/// VALUES are windowed by 256, isolating formula error in the far tail.
fn deep_itm_reflection(ctx: &BigCtx) -> Result<Vec<TestCase>, HarnessError> {
    const STRIKES: [i32; 12] = [-1, -2, -3, -5, -7, -8, -9, -10, -15, -20, -25, -30];
    let mut cases = Vec::with_capacity(STRIKES.len() * WINDOW);
    for k in STRIKES {
        let m = f64::from(1 - k);
        let center = rounded_time_value(ctx, m)?;
        push_window(
            &mut cases,
            &format!("reflection/k{k}"),
            m,
            center,
            QuoteForm::TimeValue,
            m,
        )?;
    }
    Ok(cases)
}

/// Direct standardized-moneyness grid: `m = |d|` at `sigma = T = 1`, time
/// values windowed by 256. The sign of `d` only selects call/put labeling;
/// both sides normalize to the same quote.
fn direct_otm(ctx: &BigCtx) -> Result<Vec<TestCase>, HarnessError> {
    const D: [f64; 15] = [
        -8.0, -5.0, -3.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0,
    ];
    let one = ctx.from_f64(1.0);
    let mut cases = Vec::with_capacity(D.len() * WINDOW);
    for d in D {
        let m = d.abs();
        let center = if m == 0.0 {
            BigCtx::to_f64(&big_atm_price(ctx, &one, &one))
        } else {
            rounded_time_value(ctx, m)?
        };
        push_window(
            &mut cases,
            &format!("direct/d{d}"),
            m,
            center,
            QuoteForm::TimeValue,
            d,
        )?;
    }
    Ok(cases)
}

/// Uniform signed grid `d = i * 0.025` for `|d| <= limit`, one case per node,
/// scored in promoted-fit mode: inputs are generated by the extended-precision
/// pricer and rounded once to binary64. `d` and `-d` normalize identically, so
/// each magnitude's base value is computed once.
fn dense_grid(ctx: &BigCtx, suite: Suite, limit: f64) -> Result<Vec<TestCase>, HarnessError> {
    const STEP: f64 = 0.025;
    let n = (limit / STEP).round() as i32;
    let one = ctx.from_f64(1.0);
    let atm = BigCtx::to_f64(&big_atm_price(ctx, &one, &one));
    let mut by_magnitude = Vec::with_capacity(n as usize + 1);
    by_magnitude.push(atm);
    for i in 1..=n {
        by_magnitude.push(rounded_time_value(ctx, f64::from(i) * STEP)?);
    }
    let name = suite.name();
    let mut cases = Vec::with_capacity(2 * n as usize + 1);
    for i in -n..=n {
        let d = f64::from(i) * STEP;
        cases.push(TestCase {
            id: format!("{name}/i{i:+05}"),
            moneyness: d.abs(),
            value: by_magnitude[i.unsigned_abs() as usize],
            form: QuoteForm::TimeValue,
            expiry: 1.0,
            d_label: d,
            scoring: Scoring::PromotedFit,
            degenerate: false,
        });
    }
    Ok(cases)
}

/// Fixed sparse nodes spanning the entire supported range, out to the far
/// tail at `|d| = 35`; promoted-fit scoring like the dense grids.
fn fixed_tail(ctx: &BigCtx) -> Result<Vec<TestCase>, HarnessError> {
    const MAGNITUDES: [f64; 14] = [
        0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 8.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0,
    ];
    let one = ctx.from_f64(1.0);
    let mut values = Vec::with_capacity(MAGNITUDES.len());
    for m in MAGNITUDES {
        values.push(rounded_time_value(ctx, m)?);
    }
    let mut cases = Vec::with_capacity(2 * MAGNITUDES.len() + 1);
    let mut push = |d: f64, value: f64| {
        cases.push(TestCase {
            id: format!("tail/d{d}"),
            moneyness: d.abs(),
            value,
            form: QuoteForm::TimeValue,
            expiry: 1.0,
            d_label: d,
            scoring: Scoring::PromotedFit,
            degenerate: false,
        });
    };
    for (i, m) in MAGNITUDES.iter().enumerate().rev() {
        push(-m, values[i]);
    }
    push(0.0, BigCtx::to_f64(&big_atm_price(ctx, &one, &one)));
    for (i, m) in MAGNITUDES.iter().enumerate() {
        push(*m, values[i]);
    }
    Ok(cases)
}

/// Step `value` by `offset` binary64 ulps.
fn step_ulps(value: f64, offset: i32) -> f64 {
    let mut v = value;
    for _ in 0..offset.unsigned_abs() {
        v = if offset > 0 {
            v.next_up()
        } else {
            v.next_down()
        };
    }
    v
}

/// Adversarial suite: core values out to `|d| = 37` with reflected
/// in-the-money twins, ulp straddles of every formula boundary, subnormal
/// time values down to the minimum positive binary64, and a scaled
/// forward/vol/expiry/moneyness cross-product. Constructions that destroy the
/// volatility information are flagged degenerate, not dropped.
fn adversarial(ctx: &BigCtx) -> Result<Vec<TestCase>, HarnessError> {
    let one = ctx.from_f64(1.0);
    let mut cases = Vec::new();

    // (a) Core values |d| = 0..=37 as OTM time-value quotes, plus reflected
    // ITM full-price twins. A twin whose price rounds to bare intrinsic has
    // lost the volatility entirely and is totality-only.
    cases.push(TestCase {
        id: "adv/core/atm".to_string(),
        moneyness: 0.0,
        value: BigCtx::to_f64(&big_atm_price(ctx, &one, &one)),
        form: QuoteForm::TimeValue,
        expiry: 1.0,
        d_label: 0.0,
        scoring: Scoring::DoublePipeline,
        degenerate: false,
    });
    for j in 1..=37 {
        let m = f64::from(j);
        let tv = rounded_time_value(ctx, m)?;
        cases.push(TestCase {
            id: format!("adv/core/otm-d{j}"),
            moneyness: m,
            value: tv,
            form: QuoteForm::TimeValue,
            expiry: 1.0,
            d_label: -m,
            scoring: Scoring::DoublePipeline,
            degenerate: false,
        });
        let price = rounded_full_price(ctx, m)?;
        cases.push(TestCase {
            id: format!("adv/core/itm-d{j}"),
            moneyness: m,
            value: price,
            form: QuoteForm::FullPrice,
            expiry: 1.0,
            d_label: m,
            scoring: Scoring::DoublePipeline,
            degenerate: price - m <= 0.0,
        });
    }

    // (b) +/-{1,2,4}-ulp straddles of the four formula boundaries at m = 1:
    // the route threshold g = 0.15, the compact in-the-money split u = 0.20
    // (c = m / 0.20 = 5), and the two out-of-the-money zone seams. The seam
    // time values are the binary64 solutions of eta(c) = boundary.
    let seam = |eta: f64| (-(eta * LOG_ROUTING_SCALE + LOG_ROUTING_OFFSET)).exp();
    let straddles: [(&str, f64, f64); 4] = [
        ("galpha", ITM_THRESHOLD, -0.8005728294149357),
        ("usplit", 5.0, -0.0727267005432317),
        ("zone12", seam(ZONE1_END), -3.1293453875128243),
        ("zone23", seam(ZONE2_END), -11.486065149400567),
    ];
    for (tag, center, d_label) in straddles {
        for offset in [-4, -2, -1, 0, 1, 2, 4] {
            cases.push(TestCase {
                id: format!("adv/straddle/{tag}/u{offset:+}"),
                moneyness: 1.0,
                value: step_ulps(center, offset),
                form: QuoteForm::TimeValue,
                expiry: 1.0,
                d_label,
                scoring: Scoring::DoublePipeline,
                degenerate: false,
            });
        }
    }

    // (c) Tail-cutoff ladder: tiny and subnormal time values at m = 1, down
    // to the minimum positive binary64. All must invert to a finite positive
    // volatility; the label uses the leading-order asymptotic |d|.
    const LADDER: [f64; 12] = [
        5e-324,
        2.5e-323,
        1e-320,
        1e-315,
        1e-310,
        1e-308,
        f64::MIN_POSITIVE,
        1e-300,
        1e-250,
        1e-200,
        1e-100,
        1e-50,
    ];
    for (i, c) in LADDER.into_iter().enumerate() {
        cases.push(TestCase {
            id: format!("adv/subnormal/{i:02}"),
            moneyness: 1.0,
            value: c,
            form: QuoteForm::TimeValue,
            expiry: 1.0,
            d_label: -(2.0 * -c.ln()).sqrt(),
            scoring: Scoring::DoublePipeline,
            degenerate: false,
        });
    }

    // (d) Scaled cross-product. The strike is reconstructed from the
    // requested d, so the case exercises the full binary64 input path:
    // the recomputed forward-strike difference and, on the in-the-money
    // side, a self-consistent full price.
    const FORWARDS: [f64; 5] = [-10.0, -0.1, 0.0, 1.0, 100.0];
    const SIGMAS: [f64; 5] = [1e-6, 0.003, 1.0, 40.0, 1e6];
    const EXPIRIES: [f64; 5] = [1e-8, 0.01, 1.0, 100.0, 1e8];
    const DS: [f64; 9] = [-5.0, -2.0, -0.1, -1e-8, 0.0, 1e-8, 0.1, 2.0, 5.0];
    for forward in FORWARDS {
        for sigma in SIGMAS {
            for expiry in EXPIRIES {
                for d in DS {
                    let v = sigma * expiry.sqrt();
                    let strike = forward - d * v;
                    let x = forward - strike;
                    let m = x.abs();
                    cases.push(cross_product_case(forward, sigma, expiry, d, m, x));
                }
            }
        }
    }

    Ok(cases)
}

/// Build one scaled cross-product case from the recomputed forward-strike
/// difference `x` (`m = |x|`).
fn cross_product_case(forward: f64, sigma: f64, expiry: f64, d: f64, m: f64, x: f64) -> TestCase {
    let id = format!("adv/xprod/f{forward:?}-s{sigma:?}-t{expiry:?}-d{d:?}");
    let (value, form, degenerate) = if m == 0.0 {
        // Strike collapsed onto the forward. For a requested d != 0 the case
        // no longer probes what it meant to; flag it and keep it for
        // totality only.
        (atm_price(sigma, expiry), QuoteForm::TimeValue, d != 0.0)
    } else {
        let tv = otm_time_value(m, sigma, expiry).unwrap_or(f64::NAN);
        if x > 0.0 {
            let price = m + tv;
            // Price indistinguishable from bare intrinsic: volatility lost.
            let swallowed = !(price - m > 0.0);
            (price, QuoteForm::FullPrice, swallowed || !tv.is_finite())
        } else {
            (tv, QuoteForm::TimeValue, tv == 0.0 || !tv.is_finite())
        }
    };
    TestCase {
        id,
        moneyness: m,
        value,
        form,
        expiry,
        d_label: d,
        scoring: Scoring::DoublePipeline,
        degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig::with_precision(256)
    }

    #[test]
    fn suite_sizes_match_report_counts() {
        let sizes = [
            (Suite::StrikeGrid, 4096),
            (Suite::DeepItmReflection, 3072),
            (Suite::DirectOtm, 3840),
            (Suite::Dense8, 641),
            (Suite::Dense30, 2401),
            (Suite::FixedTail, 29),
        ];
        for (suite, expect) in sizes {
            assert_eq!(generate(suite, &cfg()).unwrap().len(), expect, "{suite:?}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::parse(suite.name()), Some(suite));
        }
        assert_eq!(Suite::parse("all"), None);
    }

    #[test]
    fn windows_are_consecutive_binary64_values() {
        let cases = generate(Suite::DirectOtm, &cfg()).unwrap();
        for pair in cases[..WINDOW].windows(2) {
            assert_eq!(pair[0].value.next_up(), pair[1].value);
        }
        // Every direct case shares sigma = T = 1 normalized geometry.
        assert!(cases.iter().all(|c| c.form == QuoteForm::TimeValue));
        assert!(cases.iter().all(|c| !c.degenerate));
    }

    #[test]
    fn direct_window_centers_on_known_unit_time_value() {
        let cases = generate(Suite::DirectOtm, &cfg()).unwrap();
        // d = -1 block is third from last of the negative side: find by id.
        let center = cases
            .iter()
            .find(|c| c.id == "direct/d-1/u+000")
            .expect("center case present");
        assert_eq!(center.moneyness, 1.0);
        assert_eq!(center.value, 0.0833154705876863);
        assert_eq!(center.d_label, -1.0);
    }

    #[test]
    fn strike_grid_quotes_full_prices_in_the_money() {
        let cases = generate(Suite::StrikeGrid, &cfg()).unwrap();
        let itm: Vec<_> = cases
            .iter()
            .filter(|c| c.form == QuoteForm::FullPrice)
            .collect();
        assert_eq!(itm.len(), 7 * WINDOW);
        let k0 = cases.iter().find(|c| c.id == "strike/k0/u+000").unwrap();
        assert_eq!(k0.moneyness, 1.0);
        // Full price = 1 + tv(1), formed in extended precision and rounded
        // once; at this strike that coincides with the binary64 sum.
        assert_eq!(k0.value, 1.0 + 0.0833154705876863);
        assert!(k0.pipeline_time_value() > 0.0);
        assert!(cases.iter().all(|c| !c.degenerate));
    }

    #[test]
    fn reflection_reduces_deep_strikes_to_time_values() {
        let cases = generate(Suite::DeepItmReflection, &cfg()).unwrap();
        assert!(cases.iter().all(|c| c.form == QuoteForm::TimeValue));
        assert!(cases.iter().all(|c| c.d_label > 0.0));
        let far = cases
            .iter()
            .find(|c| c.id == "reflection/k-30/u+000")
            .unwrap();
        assert_eq!(far.moneyness, 31.0);
        assert!(far.value > 0.0 && far.value < 1e-200);
        // 128 predecessors of a tiny normal value stay positive.
        assert!(cases.iter().all(|c| c.value > 0.0));
    }

    #[test]
    fn dense_grid_is_signed_and_negative_first() {
        let cases = generate(Suite::Dense8, &cfg()).unwrap();
        assert_eq!(cases[0].d_label, -8.0);
        assert_eq!(cases[320].d_label, 0.0);
        assert_eq!(cases[640].d_label, 8.0);
        assert!(cases.windows(2).all(|p| p[0].d_label < p[1].d_label));
        // Mirrored nodes share the identical rounded input.
        assert_eq!(cases[0].value, cases[640].value);
        assert!(cases.iter().all(|c| c.scoring == Scoring::PromotedFit));
    }

    #[test]
    fn adversarial_counts_and_flags() {
        let cases = generate(Suite::Adversarial, &cfg()).unwrap();
        assert_eq!(cases.len(), 75 + 28 + 12 + 1125);
        // Reflected twins lose the time value once it falls below half an
        // ulp of the intrinsic part: j = 8 onward (tv(8) = 7.55e-17 against a
        // half ulp of 8.88e-16).
        let degenerate_twins = cases
            .iter()
            .filter(|c| c.id.starts_with("adv/core/itm") && c.degenerate)
            .count();
        assert_eq!(degenerate_twins, 37 - 7);
        // The subnormal ladder is scorable all the way down.
        assert!(cases
            .iter()
            .filter(|c| c.id.starts_with("adv/subnormal"))
            .all(|c| !c.degenerate && c.value > 0.0));
        // Strike collapse in the scaled grid is flagged, not dropped.
        assert!(cases
            .iter()
            .any(|c| c.id.starts_with("adv/xprod") && c.moneyness == 0.0 && c.degenerate));
        let xprod = cases
            .iter()
            .filter(|c| c.id.starts_with("adv/xprod"))
            .count();
        assert_eq!(xprod, 1125);
    }

    #[test]
    fn straddles_sit_exactly_on_the_route_constants() {
        let cases = generate(Suite::Adversarial, &cfg()).unwrap();
        let center = |tag: &str| {
            cases
                .iter()
                .find(|c| c.id == format!("adv/straddle/{tag}/u+0"))
                .unwrap()
                .value
        };
        assert_eq!(center("galpha"), ITM_THRESHOLD);
        assert_eq!(center("usplit"), 5.0);
        // Seam centers land within the zone boundary's immediate
        // neighbourhood: eta of the center is the boundary up to one ulp of
        // the exp/ln round trip.
        let c12 = center("zone12");
        let eta = (-c12.ln() - LOG_ROUTING_OFFSET) / LOG_ROUTING_SCALE;
        assert!((eta - ZONE1_END).abs() < 1e-15);
    }
}
