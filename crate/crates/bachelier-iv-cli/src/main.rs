//! Command-line front end for the normal-model implied-volatility library.
//!
//! One subcommand per task: `price` and `invert` wrap the scalar kernels,
//! `validate` runs the accuracy suites against the extended-precision
//! reference and gates on the pinned thresholds, `profile` writes the dense
//! error-profile grid, and `bench` times both inversion methods.
//!
//! Exit codes: 0 success, 1 threshold breach (or a failed measurement run),
//! 2 usage or unusable output file, 3 rejected market inputs, 4 reference
//! solver failure.

use std::path::PathBuf;
use std::process::ExitCode;

use bachelier_iv::harness::{
    acceptance_bounds, csv_report, generate, markdown_report, score_suites, write_profile, Suite,
    SuiteReport,
};
use bachelier_iv::oracle::OracleConfig;
use bachelier_iv::{
    bench, implied_vol, DomainError, HarnessError, Method, OptionKind, OptionQuote, OracleError,
};
use clap::{Parser, Subcommand};

const EXIT_BREACH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_ORACLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "bachelier-iv",
    version,
    about = "Bachelier (normal model) pricing, explicit implied-vol inversion, \
             and the accuracy/timing harness around it"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price a European option and report its out-of-the-money time value.
    Price {
        /// Forward of the underlying (any sign).
        #[arg(long, allow_hyphen_values = true)]
        forward: f64,
        /// Strike (any sign).
        #[arg(long, allow_hyphen_values = true)]
        strike: f64,
        /// Normal volatility, in price units per square-root year.
        #[arg(long, allow_hyphen_values = true)]
        vol: f64,
        /// Year fraction to expiry; must be positive.
        #[arg(long, allow_hyphen_values = true)]
        maturity: f64,
        /// Price a put instead of a call.
        #[arg(long)]
        put: bool,
    },
    /// Recover the implied normal volatility from a price.
    Invert {
        /// Forward of the underlying (any sign).
        #[arg(long, allow_hyphen_values = true)]
        forward: f64,
        /// Strike (any sign).
        #[arg(long, allow_hyphen_values = true)]
        strike: f64,
        /// Year fraction to expiry; must be positive.
        #[arg(long, allow_hyphen_values = true)]
        maturity: f64,
        /// Undiscounted option price.
        #[arg(long, allow_hyphen_values = true)]
        price: f64,
        /// Invert a put instead of a call.
        #[arg(long)]
        put: bool,
        /// Inversion method.
        #[arg(long, default_value = "lfk2026c", value_parser = parse_method)]
        method: Method,
    },
    /// Run accuracy suites against the extended-precision reference.
    Validate {
        /// Suite to run, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suite_selector)]
        suite: SuiteSelector,
        /// Restrict to one method; default runs both.
        #[arg(long, value_parser = parse_method)]
        method: Option<Method>,
        /// Working precision of the reference solver.
        #[arg(long, default_value_t = 512)]
        precision_bits: usize,
        /// Also write the report as CSV to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the dense error-profile grid as CSV.
    Profile {
        /// Half-width of the grid in standardized moneyness: 8 or 30.
        #[arg(long, value_parser = parse_limit)]
        limit: Suite,
        /// Output CSV path; a `.boundaries.csv` sidecar lands next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Time both inversion methods with rotated measurement rounds.
    Bench {
        /// Measured rounds per method.
        #[arg(long)]
        rounds: Option<usize>,
        /// Kernel calls per round.
        #[arg(long)]
        calls: Option<usize>,
    },
}

/// `--suite` accepts every suite name plus the `all` aggregate.
#[derive(Debug, Clone, Copy)]
enum SuiteSelector {
    All,
    One(Suite),
}

fn parse_method(raw: &str) -> Result<Method, String> {
    Method::parse(raw).ok_or_else(|| format!("unknown method {raw:?}; use lfk2026 or lfk2026c"))
}

fn parse_suite_selector(raw: &str) -> Result<SuiteSelector, String> {
    if raw == "all" {
        return Ok(SuiteSelector::All);
    }
    Suite::parse(raw).map(SuiteSelector::One).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!(
            "unknown suite {raw:?}; use all or one of {}",
            names.join(", ")
        )
    })
}

fn parse_limit(raw: &str) -> Result<Suite, String> {
    match raw {
        "8" => Ok(Suite::Dense8),
        "30" => Ok(Suite::Dense30),
        _ => Err(format!("unsupported grid limit {raw:?}; use 8 or 30")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Price {
            forward,
            strike,
            vol,
            maturity,
            put,
        } => cmd_price(forward, strike, vol, maturity, put),
        Command::Invert {
            forward,
            strike,
            maturity,
            price,
            put,
            method,
        } => cmd_invert(forward, strike, maturity, price, put, method),
        Command::Validate {
            suite,
            method,
            precision_bits,
            out,
        } => cmd_validate(suite, method, precision_bits, out),
        Command::Profile { limit, out } => cmd_profile(limit, out),
        Command::Bench { rounds, calls } => cmd_bench(rounds, calls),
    }
}

fn domain_failure(err: &DomainError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(EXIT_DOMAIN)
}

fn cmd_price(forward: f64, strike: f64, vol: f64, maturity: f64, put: bool) -> ExitCode {
    let price = if put {
        bachelier_iv::bachelier_put(forward, strike, vol, maturity)
    } else {
        bachelier_iv::bachelier_call(forward, strike, vol, maturity)
    };
    let price = match price {
        Ok(p) => p,
        Err(e) => return domain_failure(&e),
    };
    let moneyness = (forward - strike).abs();
    let time_value = match bachelier_iv::pricing::otm_time_value(moneyness, vol, maturity) {
        Ok(tv) => tv,
        Err(e) => return domain_failure(&e),
    };
    println!("price {price:.16e}");
    println!("time_value {time_value:.16e}");
    ExitCode::SUCCESS
}

fn cmd_invert(
    forward: f64,
    strike: f64,
    maturity: f64,
    price: f64,
    put: bool,
    method: Method,
) -> ExitCode {
    let quote = OptionQuote {
        forward,
        strike,
        expiry: maturity,
        price,
        kind: if put {
            OptionKind::Put
        } else {
            OptionKind::Call
        },
    };
    match implied_vol(&quote, method) {
        Ok(inversion) => {
            println!("sigma {:.16e}", inversion.sigma);
            println!("branch {}", inversion.branch.tag());
            if let Some(routing) = inversion.routing_value {
                println!("routing {routing:.16e}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => domain_failure(&e),
    }
}

fn oracle_failure(err: &OracleError) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        // A too-low `--precision-bits` is an argument problem, not a solver one.
        OracleError::PrecisionTooLow { .. } => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_ORACLE),
    }
}

fn harness_failure(err: &HarnessError) -> ExitCode {
    match err {
        HarnessError::Oracle(inner) => oracle_failure(inner),
        HarnessError::Io { .. } => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
        HarnessError::DegenerateWindow { .. } => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_BREACH)
        }
    }
}

/// A suite passes when its pinned error bounds hold and every case produced
/// a finite volatility.
fn suite_passes(report: &SuiteReport) -> bool {
    acceptance_bounds(report.suite).check(&report.stats) && report.stats.totality_failures == 0
}

fn cmd_validate(
    selector: SuiteSelector,
    method: Option<Method>,
    precision_bits: usize,
    out: Option<PathBuf>,
) -> ExitCode {
    let config = OracleConfig::with_precision(precision_bits);
    if let Err(e) = config.validate() {
        return oracle_failure(&e);
    }
    let methods: Vec<Method> = match method {
        Some(m) => vec![m],
        None => vec![Method::Lfk2026, Method::Lfk2026c],
    };
    let suites: Vec<Suite> = match selector {
        SuiteSelector::All => Suite::ALL.to_vec(),
        SuiteSelector::One(s) => vec![s],
    };

    let mut reports: Vec<SuiteReport> = Vec::new();
    for suite in suites {
        let cases = match generate(suite, &config) {
            Ok(c) => c,
            Err(e) => return harness_failure(&e),
        };
        match score_suites(suite, &cases, &methods, &config) {
            Ok(mut r) => reports.append(&mut r),
            Err(e) => return harness_failure(&e),
        }
    }

    print!("{}", markdown_report(&reports));
    if let Some(path) = out {
        if let Err(source) = std::fs::write(&path, csv_report(&reports)) {
            return harness_failure(&HarnessError::Io { path, source });
        }
    }

    let mut all_pass = true;
    for report in &reports {
        if !suite_passes(report) {
            all_pass = false;
            eprintln!(
                "FAIL {} {}: max {:e} p99 {:e} ({} non-finite)",
                report.suite.name(),
                report.method.name(),
                report.stats.max_error,
                report.stats.p99,
                report.stats.totality_failures,
            );
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_BREACH)
    }
}

fn cmd_profile(suite: Suite, out: PathBuf) -> ExitCode {
    match write_profile(&out, suite, &OracleConfig::default()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => harness_failure(&e),
    }
}

fn cmd_bench(rounds: Option<usize>, calls: Option<usize>) -> ExitCode {
    let mut config = match bench::BenchConfig::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(r) = rounds {
        config.rounds = r;
    }
    if let Some(c) = calls {
        config.calls_per_round = c;
    }
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match bench::run(&config, &[Method::Lfk2026, Method::Lfk2026c]) {
        Ok(report) => {
            for timing in &report.timings {
                println!(
                    "{} {:.2} ns/call (median of {} rounds x {} calls)",
                    timing.method.name(),
                    timing.median_ns_per_call,
                    report.rounds,
                    report.calls_per_round,
                );
            }
            // Consuming the checksum keeps the timed loop honest under
            // optimization; stderr keeps stdout machine-readable.
            eprintln!("checksum {:.16e}", report.checksum);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BREACH)
        }
    }
}
