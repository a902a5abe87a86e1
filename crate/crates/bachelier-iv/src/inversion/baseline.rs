//! Loader and evaluator for externally supplied baseline inversion tables.
//!
//! The crate ships no baseline coefficients; this module exists so an older
//! generation of fitted tables can be loaded from a text file and compared
//! in the same harness. The baseline transform differs from the shipped
//! methods in the money — it maps through `z = m / (m + c)` and
//! `eta_z = -z / ln(1 - z)` — and fits `d^2` (not `1/|d|`) out of the money,
//! so its out-of-the-money result is `m / (sqrt(T) * sqrt(R(eta)))`.
//!
//! # File format
//!
//! ```text
//! # comment
//! [itm]
//! <numerator coefficients, one per line, ascending powers>
//!
//! <denominator coefficients, leading coefficient 1>
//!
//! [otm1] ... [otm2] ... [otm3] ...
//! ```
//!
//! Blank lines separate the numerator block from the denominator block;
//! `#` starts a comment. Sections beyond the required four are allowed and
//! ignored by the baseline loader (the same parser serves other table
//! files).

use std::path::Path;

use crate::error::TableError;
use crate::inversion::coefficients::{rational, ITM_THRESHOLD, ZONE1_END, ZONE2_END};

/// One parsed `num/den` coefficient pair, ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalTable {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl RationalTable {
    /// Evaluate at `y` (descending Horner, one division).
    #[inline]
    pub fn eval(&self, y: f64) -> f64 {
        rational(&self.numerator, &self.denominator, y)
    }
}

/// Parse a coefficient-table file into `(section name, table)` pairs,
/// preserving file order.
pub fn parse_coefficient_file(text: &str) -> Result<Vec<(String, RationalTable)>, TableError> {
    struct Open {
        name: String,
        blocks: Vec<Vec<f64>>,
        in_block: bool,
    }
    let mut sections: Vec<(String, RationalTable)> = Vec::new();
    let mut open: Option<Open> = None;

    fn close(open: Option<Open>, out: &mut Vec<(String, RationalTable)>) -> Result<(), TableError> {
        let Some(section) = open else {
            return Ok(());
        };
        if section.blocks.len() != 2 {
            return Err(TableError::BlockCount {
                section: section.name,
                blocks: section.blocks.len(),
            });
        }
        let mut it = section.blocks.into_iter();
        let numerator = it.next().expect("two blocks");
        let denominator = it.next().expect("two blocks");
        for &c in numerator.iter().chain(denominator.iter()) {
            if !c.is_finite() {
                return Err(TableError::NonFiniteCoefficient {
                    section: section.name,
                    value: c,
                });
            }
        }
        if denominator[0] != 1.0 {
            return Err(TableError::DenominatorNotNormalized {
                section: section.name,
                value: denominator[0],
            });
        }
        out.push((
            section.name,
            RationalTable {
                numerator,
                denominator,
            },
        ));
        Ok(())
    }

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if let Some(s) = open.as_mut() {
                s.in_block = false;
            }
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            close(open.take(), &mut sections)?;
            open = Some(Open {
                name: name.to_string(),
                blocks: Vec::new(),
                in_block: false,
            });
            continue;
        }
        let Some(section) = open.as_mut() else {
            return Err(TableError::BadLine {
                line: idx + 1,
                text: raw.to_string(),
            });
        };
        let value: f64 = line.parse().map_err(|_| TableError::BadLine {
            line: idx + 1,
            text: raw.to_string(),
        })?;
        if !section.in_block {
            section.blocks.push(Vec::new());
            section.in_block = true;
        }
        section
            .blocks
            .last_mut()
            .expect("block opened above")
            .push(value);
    }
    close(open.take(), &mut sections)?;
    Ok(sections)
}

/// A loaded baseline method: one in-the-money table, three zone tables.
#[derive(Debug, Clone)]
pub struct BaselineMethod {
    itm: RationalTable,
    otm: [RationalTable; 3],
}

impl BaselineMethod {
    /// Build from already-parsed sections `[itm]`, `[otm1]`, `[otm2]`,
    /// `[otm3]`; extra sections are ignored.
    pub fn from_sections(sections: Vec<(String, RationalTable)>) -> Result<Self, TableError> {
        let mut itm = None;
        let mut otm: [Option<RationalTable>; 3] = [None, None, None];
        for (name, table) in sections {
            match name.as_str() {
                "itm" => itm = Some(table),
                "otm1" => otm[0] = Some(table),
                "otm2" => otm[1] = Some(table),
                "otm3" => otm[2] = Some(table),
                _ => {}
            }
        }
        let require = |t: Option<RationalTable>, section: &'static str| {
            t.ok_or(TableError::MissingSection { section })
        };
        Ok(BaselineMethod {
            itm: require(itm, "itm")?,
            otm: [
                require(otm[0].take(), "otm1")?,
                require(otm[1].take(), "otm2")?,
                require(otm[2].take(), "otm3")?,
            ],
        })
    }

    /// Parse from file text.
    pub fn from_text(text: &str) -> Result<Self, TableError> {
        Self::from_sections(parse_coefficient_file(text)?)
    }

    /// Load from a file path.
    pub fn from_file(path: &Path) -> Result<Self, TableError> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    /// Invert normalized inputs with the baseline transform.
    pub fn invert(&self, moneyness: f64, time_value: f64, expiry: f64) -> f64 {
        if moneyness == 0.0 {
            return super::invert_wide(0.0, time_value, expiry);
        }
        if time_value == 0.0 {
            return 0.0;
        }
        let g = time_value / moneyness;
        if g > ITM_THRESHOLD {
            let z = moneyness / (moneyness + time_value);
            let h = self.itm.eval(shrunk_log_ratio(z));
            return (moneyness + time_value) / expiry.sqrt() * h;
        }
        let eta = super::otm_eta(moneyness, time_value, g);
        let idx = if eta < ZONE1_END {
            0
        } else if eta < ZONE2_END {
            1
        } else {
            2
        };
        // The zone tables fit d^2; map back through the square root.
        moneyness / (expiry.sqrt() * self.otm[idx].eval(eta).sqrt())
    }
}

/// `-z / ln(1 - z)` with a series fallback where the ratio degenerates.
///
/// Maps `z in (0, 1)` to `(0, 1)` smoothly; the `z -> 0` limit is 1.
#[inline]
fn shrunk_log_ratio(z: f64) -> f64 {
    // Below 2^-27 the quadratic term falls under half an ulp of 1.
    if z < 7.450_580_596_923_828e-9 {
        1.0 - 0.5 * z - z * z / 12.0
    } else {
        -z / (-z).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ulp_distance;
    use crate::specfun::SQRT_2PI;

    /// A baseline file whose in-the-money table is the constant sqrt(2 pi)
    /// and whose zone tables are the constant 1, so expected outputs are
    /// closed forms.
    const TOY: &str = "\
# toy tables
[itm]
2.5066282746310007

1.0

[otm1]
1.0

1.0

[otm2] # trailing comment
1.0

1.0

[otm3]
1.0

1.0

[extra]
3.0
4.0

1.0
2.0
";

    #[test]
    fn parses_sections_blocks_and_comments() {
        let sections = parse_coefficient_file(TOY).unwrap();
        assert_eq!(sections.len(), 5);
        assert_eq!(sections[0].0, "itm");
        assert_eq!(sections[0].1.numerator, vec![2.506_628_274_631_000_7]);
        assert_eq!(sections[4].0, "extra");
        assert_eq!(sections[4].1.numerator, vec![3.0, 4.0]);
        assert_eq!(sections[4].1.denominator, vec![1.0, 2.0]);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(
            parse_coefficient_file("1.0\n"),
            Err(TableError::BadLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_coefficient_file("[a]\n1.0\n"),
            Err(TableError::BlockCount { blocks: 1, .. })
        ));
        assert!(matches!(
            parse_coefficient_file("[a]\n1.0\n\n2.0\n"),
            Err(TableError::DenominatorNotNormalized { .. })
        ));
        assert!(matches!(
            parse_coefficient_file("[a]\n1.0\nbogus\n\n1.0\n"),
            Err(TableError::BadLine { line: 3, .. })
        ));
        assert!(matches!(
            parse_coefficient_file("[a]\ninf\n\n1.0\n"),
            Err(TableError::NonFiniteCoefficient { .. })
        ));
        let missing = BaselineMethod::from_text("[itm]\n1.0\n\n1.0\n");
        assert!(matches!(
            missing,
            Err(TableError::MissingSection { section: "otm1" })
        ));
    }

    #[test]
    fn toy_tables_evaluate_closed_forms() {
        let method = BaselineMethod::from_text(TOY).unwrap();
        // In the money with h == sqrt(2 pi): sigma = (m + c) sqrt(2 pi) / sqrt(T).
        let sigma = method.invert(1.0, 1.0, 1.0);
        assert!(ulp_distance(sigma, 2.0 * SQRT_2PI) <= 2);
        // Out of the money with R == 1: sigma = m / sqrt(T).
        let sigma = method.invert(1.0, 0.01, 4.0);
        assert!(ulp_distance(sigma, 0.5) <= 2);
        // At the money falls through to the exact closed form.
        let sigma = method.invert(0.0, 0.398_942_280_401_432_7, 1.0);
        assert!(ulp_distance(sigma, 1.0) <= 1);
        assert_eq!(method.invert(2.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn shrunk_log_ratio_limits_and_seam() {
        // z = 1/2: -0.5 / ln(0.5) = 1 / (2 ln 2).
        let want = 1.0 / (2.0 * std::f64::consts::LN_2);
        assert!(ulp_distance(shrunk_log_ratio(0.5), want) <= 2);
        // Both closed forms agree at the same z on either side of the switch
        // point, so crossing it cannot jump.
        let seam: f64 = 7.450_580_596_923_828e-9;
        for z in [seam * 0.999, seam, seam * 1.001] {
            let series = 1.0 - 0.5 * z - z * z / 12.0;
            let log_form = -z / (-z).ln_1p();
            assert!(ulp_distance(series, log_form) <= 1, "forms split at {z:e}");
        }
        assert_eq!(shrunk_log_ratio(0.0), 1.0);
    }
}
