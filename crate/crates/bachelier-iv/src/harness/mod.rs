//! Accuracy-measurement harness: test-case suites, the scoring runner, and
//! report emission.
//!
//! The suites pin down three different questions:
//!
//! * the windowed double-precision suites (`strike`, `reflection`, `direct`)
//!   measure the *whole binary64 pipeline* — normalization subtraction
//!   included — against the extended-precision reference;
//! * the dense grids and fixed tail points (`dense8`, `dense30`, `tail`)
//!   measure the fitted rationals themselves, evaluating them with promoted
//!   coefficients in extended precision so double rounding noise drops out;
//! * the adversarial suite asserts totality — finite, non-negative output on
//!   every representable input it can construct, including subnormal prices
//!   and quotes whose information the price encoding has already destroyed.

mod run;
mod suites;

pub use run::{
    acceptance_bounds, csv_report, markdown_report, run_suite, score_suites,
    score_suites_scheduled, write_profile, Bounds, CaseScore, ErrorStats, Scheduling, Scoring,
    SuiteReport,
};
pub use suites::{generate, QuoteForm, Suite, TestCase};

use crate::error::HarnessError;

/// Distance in units in the last place between two finite binary64 values.
///
/// Implemented on the monotone integer mapping of IEEE-754 bit patterns, so
/// it is exact for any pair (including across powers of two and through
/// subnormals) and symmetric. Both zeros map to the same point. NaN or
/// infinite arguments saturate to `u64::MAX`.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    if !a.is_finite() || !b.is_finite() {
        return u64::MAX;
    }
    fn key(x: f64) -> i64 {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    }
    key(a).wrapping_sub(key(b)).unsigned_abs()
}

/// The `count` consecutive binary64 values centered on `center`:
/// `floor(count/2)` predecessors, the center, and successors for the rest.
///
/// Fails with [`HarnessError::DegenerateWindow`] if the window would leave
/// the strictly positive finite range — windows exist to perturb a positive
/// price by a few ulps, and a window that hits zero or infinity no longer
/// means anything.
pub fn ulp_window(center: f64, count: usize) -> Result<Vec<f64>, HarnessError> {
    if !(center.is_finite() && center > 0.0) || count == 0 {
        return Err(HarnessError::DegenerateWindow { center, count });
    }
    let below = count / 2;
    let mut lo = center;
    let mut values = Vec::with_capacity(count);
    for _ in 0..below {
        lo = lo.next_down();
        if lo <= 0.0 {
            return Err(HarnessError::DegenerateWindow { center, count });
        }
    }
    let mut x = lo;
    for _ in 0..count {
        if !(x.is_finite() && x > 0.0) {
            return Err(HarnessError::DegenerateWindow { center, count });
        }
        values.push(x);
        x = x.next_up();
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ulp_distance_basics() {
        assert_eq!(ulp_distance(1.0, 1.0), 0);
        assert_eq!(ulp_distance(1.0, 1.0 + f64::EPSILON), 1);
        assert_eq!(ulp_distance(1.0 + f64::EPSILON, 1.0), 1);
        // Across a binade boundary: 2.0 and its predecessor are adjacent.
        assert_eq!(ulp_distance(2.0, 2.0_f64.next_down()), 1);
        // Both zeros coincide; the smallest subnormal is one step away.
        assert_eq!(ulp_distance(0.0, -0.0), 0);
        assert_eq!(ulp_distance(0.0, 5e-324), 1);
        assert_eq!(ulp_distance(-5e-324, 5e-324), 2);
        assert_eq!(ulp_distance(f64::NAN, 1.0), u64::MAX);
        assert_eq!(ulp_distance(f64::INFINITY, 1.0), u64::MAX);
    }

    #[test]
    fn ulp_window_shape() {
        let w = ulp_window(1.0, 3).unwrap();
        assert_eq!(w, vec![1.0 - f64::EPSILON / 2.0, 1.0, 1.0 + f64::EPSILON]);
        let w = ulp_window(1.0, 256).unwrap();
        assert_eq!(w.len(), 256);
        assert_eq!(w[128], 1.0);
        for pair in w.windows(2) {
            assert_eq!(ulp_distance(pair[0], pair[1]), 1);
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn ulp_window_rejects_degenerate_centers() {
        assert!(matches!(
            ulp_window(0.0, 16),
            Err(HarnessError::DegenerateWindow { .. })
        ));
        assert!(ulp_window(-1.0, 16).is_err());
        assert!(ulp_window(f64::INFINITY, 16).is_err());
        assert!(ulp_window(1.0, 0).is_err());
        // A window around a value too close to zero would cross it.
        assert!(ulp_window(5e-324, 16).is_err());
        // But tiny subnormal-adjacent windows that fit are fine.
        assert!(ulp_window(1e-320, 16).is_ok());
    }
}
