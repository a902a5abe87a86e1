//! Randomized and swept invariants of the pricing and inversion layers.
//!
//! These complement the pinned-value unit tests: random draws probe the
//! routing and scaling structure everywhere at once, and the deterministic
//! sweeps walk the full grids the tolerances were stated for. Everything
//! here runs in pure binary64 — no extended-precision reference — so the
//! whole file stays fast.

use bachelier_iv::harness::{ulp_distance, ulp_window};
use bachelier_iv::inversion::coefficients::{rational, ITM_WIDE_DEN, ITM_WIDE_NUM};
use bachelier_iv::pricing::otm_time_value;
use bachelier_iv::{implied_vol, Branch, Method, OptionKind, OptionQuote};
use proptest::prelude::*;

const METHODS: [Method; 2] = [Method::Lfk2026, Method::Lfk2026c];

/// Log-uniform draw over [lo, hi]; both bounds must be positive.
fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    /// The normal model is homogeneous of degree one in (moneyness, vol).
    /// A power-of-two scale commutes exactly with every binary64 operation
    /// in the pricer (no operand re-rounds), so the rescaled time value
    /// must match bit for bit at any depth.
    #[test]
    fn time_value_scales_exactly_by_powers_of_two(
        sigma in log_uniform(1e-3, 1e3),
        d_mag in 0.01f64..35.0,
        expiry in log_uniform(0.01, 100.0),
        exponent in prop::sample::select(vec![-20i32, -2, 2, 20]),
    ) {
        let lambda = 2f64.powi(exponent);
        let moneyness = d_mag * sigma * expiry.sqrt();
        let base = otm_time_value(moneyness, sigma, expiry).unwrap();
        let scaled = otm_time_value(lambda * moneyness, lambda * sigma, expiry).unwrap();
        prop_assume!(base > 1e-250 && base < 1e250);
        prop_assert_eq!(
            scaled.to_bits(),
            (lambda * base).to_bits(),
            "tv(2^{}m, 2^{}s) = {:e} vs {:e}",
            exponent,
            exponent,
            scaled,
            lambda * base
        );
    }

    /// Decimal scale factors re-round the scaled moneyness, the scaled
    /// vol, and the recombined total vol independently — three half-ulp
    /// input perturbations amplified by the square of standardized
    /// moneyness, a cancellation factor in the erfcx difference, and the
    /// ordinary drift of re-rounding every interior operation (a dense
    /// sweep of this domain measures ~3e-15 worst). Exactness under
    /// rescaling is the power-of-two test's claim, at every depth.
    #[test]
    fn time_value_scales_linearly_near_money(
        sigma in log_uniform(1e-3, 1e3),
        d_mag in 0.01f64..1.0,
        expiry in log_uniform(0.01, 100.0),
        lambda in prop::sample::select(vec![1e-6, 1e-2, 1e2, 1e6]),
    ) {
        let moneyness = d_mag * sigma * expiry.sqrt();
        let base = otm_time_value(moneyness, sigma, expiry).unwrap();
        let scaled = otm_time_value(lambda * moneyness, lambda * sigma, expiry).unwrap();
        let rel = (scaled / (lambda * base) - 1.0).abs();
        prop_assert!(
            rel <= 5e-15,
            "tv({lambda}m, {lambda}s) = {scaled:e} vs {lambda} * {base:e} (rel {rel:e})"
        );
    }

    /// Homogeneity through the full market-quote path: a power-of-two
    /// rescale of forward, strike, and price leaves every intermediate —
    /// the moneyness subtraction, the intrinsic split, the routing ratio,
    /// the rational argument — on the identical bit pattern, so the
    /// recovered vol rescales exactly. Covers both kinds and both
    /// moneyness sides, in-the-money full prices included.
    ///
    /// Quotes are built as intrinsic + stable time value, which is
    /// arbitrage-free by construction. The textbook pdf/cdf pricer cannot
    /// seed this test: cancellation deep in the money can round its price
    /// one ulp below intrinsic, which the quote validation rejects.
    #[test]
    fn implied_vol_scales_exactly_by_powers_of_two(
        sigma in log_uniform(1e-2, 1e2),
        d in -20.0f64..20.0,
        forward in -2.0f64..2.0,
        expiry in log_uniform(0.04, 25.0),
        exponent in prop::sample::select(vec![-20i32, -2, 2, 20]),
        kind in prop::sample::select(vec![OptionKind::Call, OptionKind::Put]),
    ) {
        let lambda = 2f64.powi(exponent);
        let strike = forward - d * sigma * expiry.sqrt();
        let moneyness = (forward - strike).abs();
        let intrinsic = match kind {
            OptionKind::Call => (forward - strike).max(0.0),
            OptionKind::Put => (strike - forward).max(0.0),
        };
        let price = intrinsic + otm_time_value(moneyness, sigma, expiry).unwrap();
        for method in METHODS {
            let base = implied_vol(
                &OptionQuote { forward, strike, expiry, price, kind },
                method,
            )
            .unwrap();
            let scaled = implied_vol(
                &OptionQuote {
                    forward: lambda * forward,
                    strike: lambda * strike,
                    expiry,
                    price: lambda * price,
                    kind,
                },
                method,
            )
            .unwrap();
            prop_assert_eq!(scaled.branch, base.branch);
            prop_assert_eq!(
                scaled.sigma.to_bits(),
                (lambda * base.sigma).to_bits(),
                "{}: sigma(2^{}q) = {:e} vs {:e}",
                method.name(),
                exponent,
                scaled.sigma,
                lambda * base.sigma
            );
        }
    }

    /// Decimal rescaling survives on the normalized interface, where only
    /// the moneyness and the time value re-round (once each, no
    /// catastrophic subtraction) and the routing variables are ratios the
    /// rescale leaves alone; a dense sweep of this domain measures ~2e-15
    /// worst. The market-quote path cannot make this claim: re-rounded
    /// forward and strike legs cancel when moneyness is small against the
    /// forward, and an in-the-money price carries its time value in
    /// trailing bits.
    #[test]
    fn normalized_inversion_scales_linearly(
        sigma in log_uniform(1e-3, 1e3),
        d_mag in 0.01f64..20.0,
        expiry in log_uniform(0.01, 100.0),
        lambda in prop::sample::select(vec![1e-6, 1e3]),
    ) {
        let moneyness = d_mag * sigma * expiry.sqrt();
        let time_value = otm_time_value(moneyness, sigma, expiry).unwrap();
        prop_assume!(time_value > 1e-250);
        for method in METHODS {
            let base = method.invert(moneyness, time_value, expiry);
            let scaled = method.invert(lambda * moneyness, lambda * time_value, expiry);
            let rel = (scaled / (lambda * base) - 1.0).abs();
            prop_assert!(
                rel <= 5e-15,
                "{}: sigma({lambda}m, {lambda}c) = {scaled:e} vs {:e} (rel {rel:e})",
                method.name(),
                lambda * base
            );
        }
    }

    /// The two methods share the OTM tables and the routing test, so
    /// whenever one routes out of the money the other must, with
    /// bit-identical output.
    #[test]
    fn methods_agree_bit_for_bit_out_of_the_money(
        sigma in log_uniform(1e-3, 1e3),
        d_mag in 0.5f64..35.0,
        expiry in log_uniform(0.01, 100.0),
    ) {
        let moneyness = d_mag * sigma * expiry.sqrt();
        let time_value = otm_time_value(moneyness, sigma, expiry).unwrap();
        prop_assume!(time_value > 0.0);
        let wide = Method::Lfk2026.invert_diagnostic(moneyness, time_value, expiry);
        let compact = Method::Lfk2026c.invert_diagnostic(moneyness, time_value, expiry);
        let otm = matches!(
            wide.branch,
            Branch::OtmZone1 | Branch::OtmZone2 | Branch::OtmZone3
        );
        if otm {
            prop_assert_eq!(wide.branch, compact.branch);
            prop_assert_eq!(
                wide.sigma.to_bits(),
                compact.sigma.to_bits(),
                "branch {:?}: {:e} vs {:e}",
                wide.branch,
                wide.sigma,
                compact.sigma
            );
        }
    }

    /// Windows of consecutive binary64 values: exact length, step of one
    /// ulp, strictly increasing, centered on the requested price.
    #[test]
    fn windows_step_one_ulp(
        center in log_uniform(1e-280, 1e280),
        count in 2usize..512,
    ) {
        let w = ulp_window(center, count).unwrap();
        prop_assert_eq!(w.len(), count);
        prop_assert!(w.contains(&center));
        for pair in w.windows(2) {
            prop_assert!(pair[0] < pair[1]);
            prop_assert_eq!(ulp_distance(pair[0], pair[1]), 1);
        }
    }

    /// Horner evaluation of the in-the-money table agrees with a naive
    /// power-sum evaluation to a few ulps on the fitted interval.
    #[test]
    fn horner_matches_power_sum(u in 0.0f64..6.6667) {
        let naive = |coeffs: &[f64]| -> f64 {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * u.powi(i as i32))
                .sum()
        };
        let fast = rational(&ITM_WIDE_NUM, &ITM_WIDE_DEN, u);
        let slow = naive(&ITM_WIDE_NUM) / naive(&ITM_WIDE_DEN);
        prop_assert!(
            ulp_distance(fast, slow) <= 8,
            "rational({u}) = {fast:e} vs naive {slow:e}"
        );
    }
}

/// Inverting the model's own prices recovers the volatility across the
/// direct grid: vol decades times standardized moneyness to -30.
#[test]
fn round_trip_recovers_vol_on_direct_grid() {
    for sigma in [1e-4, 1.0, 1e4] {
        for i in 0..=1200 {
            let d_mag = f64::from(i) * 0.025;
            let moneyness = d_mag * sigma;
            let time_value = otm_time_value(moneyness, sigma, 1.0).unwrap();
            for method in METHODS {
                let recovered = method.invert(moneyness, time_value, 1.0);
                let rel = (recovered / sigma - 1.0).abs();
                assert!(
                    rel <= 1.5e-15,
                    "{} at sigma {sigma:e}, d {d_mag}: rel {rel:e}",
                    method.name()
                );
            }
        }
    }
}

/// The time value is strictly increasing in volatility: a thousand-point
/// log sweep over twelve decades never stalls or reverses.
#[test]
fn time_value_strictly_increasing_in_vol() {
    let (moneyness, expiry) = (1e-5, 1.0);
    let mut last = 0.0;
    for i in 0..1000 {
        let sigma = 1e-6 * 10f64.powf(12.0 * f64::from(i) / 999.0);
        let tv = otm_time_value(moneyness, sigma, expiry).unwrap();
        assert!(tv > last, "tv({sigma:e}) = {tv:e} after {last:e}");
        last = tv;
    }
}

/// Recovered volatility is nondecreasing in price up to 4 ulps per step on
/// a log grid spanning the deep tail through deep in-the-money quotes.
#[test]
fn recovered_vol_monotone_in_price() {
    for method in METHODS {
        let mut last = 0.0f64;
        for i in 0..10_000 {
            // c from 1e-40 (far tail, zone 3) to 1e2 (u = 0.01, deep ITM).
            let c = 1e-40 * 10f64.powf(42.0 * f64::from(i) / 9_999.0);
            let sigma = method.invert(1.0, c, 1.0);
            assert!(sigma.is_finite() && sigma > 0.0);
            let floor = last - 4.0 * last.abs() * f64::EPSILON;
            assert!(
                sigma >= floor,
                "{} at c = {c:e}: sigma {sigma:e} fell below {last:e}",
                method.name()
            );
            last = sigma;
        }
    }
}

/// As moneyness shrinks with the price held fixed, the in-the-money branch
/// converges to the exact at-the-money closed form. The gap closes
/// linearly in u = m/c — the tables carry a genuine u/2 first-order
/// correction the closed form lacks — so small u shows the rate and tiny u
/// reaches the limit outright.
#[test]
fn itm_branch_converges_to_atm_limit() {
    let (c, expiry) = (0.3989422804014327, 1.0);
    for method in METHODS {
        let atm = method.invert(0.0, c, expiry);
        for exponent in [-20, -30, -40] {
            let u = 2f64.powi(exponent) / c;
            let rel = (method.invert(2f64.powi(exponent), c, expiry) / atm - 1.0).abs();
            assert!(
                (0.4 * u..=0.6 * u).contains(&rel),
                "{} at m = 2^{exponent}: rel gap {rel:e} is not ~u/2 = {:e}",
                method.name(),
                0.5 * u
            );
        }
        for exponent in [-50, -60, -70] {
            let near = method.invert(2f64.powi(exponent), c, expiry);
            let rel = (near / atm - 1.0).abs();
            assert!(
                rel <= 5e-15,
                "{} at m = 2^{exponent}: {near:e} vs atm {atm:e} (rel {rel:e})",
                method.name()
            );
        }
    }
}
