//! Rotated-order scalar timing harness.
//!
//! Each measurement round times every method over the same shuffled input
//! pool; the method that goes first rotates from round to round, so slow
//! drift (frequency scaling, thermal throttling, scheduler noise) spreads
//! evenly across methods instead of biasing whichever happened to run first.
//! The reported figure is the per-method median across rounds — far more
//! stable than a single sequential timing slice.
//!
//! The input pool is stratified by the formula's own branch occupancy on the
//! uniform `|d| <= 8` grid, with a small floor for the otherwise-empty far
//! tail so every code path stays resident, then shuffled so branch prediction
//! faces a realistic mix.

use std::hint::black_box;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::BenchError;
use crate::inversion::{invert_compact, invert_compact_diagnostic, invert_wide, Branch, Method};
use crate::pricing::{atm_price, otm_time_value};

/// Environment override for the number of measured rounds.
pub const ENV_ROUNDS: &str = "BACHELIER_IV_BENCH_ROUNDS";
/// Environment override for the kernel calls per round.
pub const ENV_CALLS: &str = "BACHELIER_IV_BENCH_CALLS";

/// Pool length; a power of two so the hot loop can mask instead of divide.
const POOL_LEN: usize = 4096;

/// Timing-run parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    /// Measured rounds per method.
    pub rounds: usize,
    /// Kernel calls per round.
    pub calls_per_round: usize,
    /// Discarded warm-up rounds.
    pub warmup_rounds: usize,
    /// Seed for pool construction and shuffling.
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            rounds: 50,
            calls_per_round: 1_000_000,
            warmup_rounds: 5,
            seed: 0x6e0d_41f3_a1c2_9b57,
        }
    }
}

impl BenchConfig {
    /// Defaults adjusted by the `BACHELIER_IV_BENCH_*` environment overrides.
    pub fn from_env() -> Result<Self, BenchError> {
        Self::from_env_with(|key| std::env::var(key).ok())
    }

    fn from_env_with(get: impl Fn(&str) -> Option<String>) -> Result<Self, BenchError> {
        let mut config = Self::default();
        if let Some(raw) = get(ENV_ROUNDS) {
            config.rounds = raw.trim().parse().map_err(|_| BenchError::InvalidConfig {
                reason: "round-count override is not a positive integer",
            })?;
        }
        if let Some(raw) = get(ENV_CALLS) {
            config.calls_per_round = raw.trim().parse().map_err(|_| BenchError::InvalidConfig {
                reason: "calls-per-round override is not a positive integer",
            })?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Reject configurations that cannot be timed.
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.rounds == 0 {
            return Err(BenchError::InvalidConfig {
                reason: "at least one measured round is required",
            });
        }
        if self.calls_per_round == 0 {
            return Err(BenchError::InvalidConfig {
                reason: "at least one call per round is required",
            });
        }
        Ok(())
    }
}

/// One method's measured rounds.
#[derive(Debug, Clone)]
pub struct MethodTiming {
    pub method: Method,
    /// Whole-round wall times, in measurement order.
    pub round_ns: Vec<u128>,
    /// Median round time divided by the calls per round.
    pub median_ns_per_call: f64,
}

/// A completed timing run.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rounds: usize,
    pub calls_per_round: usize,
    pub pool_len: usize,
    /// Per-method results, in the order the methods were given.
    pub timings: Vec<MethodTiming>,
    /// Sum of every volatility produced during measurement; consumers print
    /// it so the optimizer cannot discard the timed work.
    pub checksum: f64,
}

/// The strata the pool draws from: each formula branch with its `|d|` range
/// at `sigma = T = 1` (`None` samples the single at-the-money input).
const STRATA: [(Branch, Option<(f64, f64)>); 6] = [
    (Branch::AtmExact, None),
    (Branch::ItmLowU, Some((0.005, 0.0727267005432317))),
    (
        Branch::ItmHighU,
        Some((0.0727267005432317, 0.8005728294149357)),
    ),
    (
        Branch::OtmZone1,
        Some((0.8005728294149357, 3.1293453875128243)),
    ),
    (Branch::OtmZone2, Some((3.1293453875128243, 8.0))),
    (Branch::OtmZone3, Some((11.486065149400567, 30.0))),
];

/// Branch occupancy of the half grid `d = i * 0.025, i = 0..=320`, measured
/// by routing each node, with an added 1/64 floor for the far tail.
fn stratum_weights() -> [f64; 6] {
    let mut weights = [0.0; 6];
    for i in 0..=320 {
        let d = f64::from(i) * 0.025;
        let c = if d == 0.0 {
            atm_price(1.0, 1.0)
        } else {
            otm_time_value(d, 1.0, 1.0).expect("grid time value")
        };
        let branch = invert_compact_diagnostic(d, c, 1.0).branch;
        if let Some(k) = STRATA.iter().position(|(b, _)| *b == branch) {
            weights[k] += 1.0;
        }
    }
    let floor = 321.0 / 64.0;
    for w in &mut weights {
        *w = f64::max(*w, floor);
    }
    weights
}

/// Draw one `(m, c, T)` input routing to `branch`; resamples on the rare
/// draw that rounds across a boundary.
fn draw_case(rng: &mut ChaCha8Rng, branch: Branch, range: Option<(f64, f64)>) -> (f64, f64, f64) {
    let Some((lo, hi)) = range else {
        return (0.0, atm_price(1.0, 1.0), 1.0);
    };
    let mut case = (lo, 0.0, 1.0);
    for _ in 0..100 {
        let d = rng.gen_range(lo..hi);
        let c = otm_time_value(d, 1.0, 1.0).expect("stratum time value");
        case = (d, c, 1.0);
        if invert_compact_diagnostic(d, c, 1.0).branch == branch {
            return case;
        }
    }
    case
}

/// Build the shuffled, stratified input pool.
pub fn build_pool(seed: u64) -> Vec<(f64, f64, f64)> {
    let weights = stratum_weights();
    let total: f64 = weights.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = Vec::with_capacity(POOL_LEN);
    let mut cumulative = 0.0;
    let mut assigned = 0usize;
    for (k, (branch, range)) in STRATA.iter().enumerate() {
        cumulative += weights[k];
        let upto = ((cumulative / total) * POOL_LEN as f64).round() as usize;
        for _ in assigned..upto {
            pool.push(draw_case(&mut rng, *branch, *range));
        }
        assigned = upto;
    }
    debug_assert_eq!(pool.len(), POOL_LEN);
    pool.shuffle(&mut rng);
    pool
}

/// Best-effort pin of the current thread to the CPU it is running on, so
/// the scheduler cannot migrate the measurement mid-round. Failure only
/// costs stability, so it warns instead of erroring.
fn pin_current_thread() {
    // SAFETY: cpu_set_t is a plain bitmask; the libc wrappers only write
    // into the zeroed set we hand them.
    unsafe {
        let cpu = libc::sched_getcpu();
        if cpu < 0 {
            eprintln!("warning: sched_getcpu failed; timing without a cpu pin");
            return;
        }
        let mut set: libc::cpu_set_t = std::mem::zeroed();
        libc::CPU_ZERO(&mut set);
        libc::CPU_SET(cpu as usize, &mut set);
        if libc::sched_setaffinity(0, std::mem::size_of::<libc::cpu_set_t>(), &set) != 0 {
            eprintln!("warning: sched_setaffinity failed; timing without a cpu pin");
        }
    }
}

/// Smallest nonzero interval the monotonic clock can report.
fn clock_granularity_ns() -> u128 {
    let mut best = u128::MAX;
    for _ in 0..16 {
        let start = Instant::now();
        let mut elapsed = start.elapsed();
        while elapsed.is_zero() {
            elapsed = start.elapsed();
        }
        best = best.min(elapsed.as_nanos());
    }
    best.max(1)
}

/// Time `calls` kernel invocations over `pool`, returning (wall ns, sum of
/// outputs). Never inlined so every method measures the same loop shape.
#[inline(never)]
fn time_round(f: fn(f64, f64, f64) -> f64, pool: &[(f64, f64, f64)], calls: usize) -> (u128, f64) {
    let mask = pool.len() - 1;
    let mut acc = 0.0;
    let start = Instant::now();
    for i in 0..calls {
        let (m, c, t) = pool[i & mask];
        acc += f(black_box(m), black_box(c), black_box(t));
    }
    (start.elapsed().as_nanos(), black_box(acc))
}

fn kernel(method: Method) -> fn(f64, f64, f64) -> f64 {
    match method {
        Method::Lfk2026 => invert_wide,
        Method::Lfk2026c => invert_compact,
    }
}

fn median_ns(rounds: &[u128]) -> f64 {
    let mut sorted = rounds.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    }
}

/// Run the rotated-order timing comparison.
pub fn run(config: &BenchConfig, methods: &[Method]) -> Result<BenchReport, BenchError> {
    config.validate()?;
    if methods.is_empty() {
        return Err(BenchError::InvalidConfig {
            reason: "at least one method is required",
        });
    }
    let pool = build_pool(config.seed);
    pin_current_thread();

    let mut checksum = 0.0;
    for _ in 0..config.warmup_rounds {
        for &method in methods {
            let (_, acc) = time_round(kernel(method), &pool, config.calls_per_round);
            checksum += acc;
        }
    }

    // A round must dwarf the clock's resolution or the medians are noise.
    let granularity_ns = clock_granularity_ns();
    let (probe_ns, probe_acc) = time_round(kernel(methods[0]), &pool, config.calls_per_round);
    checksum += probe_acc;
    if granularity_ns.saturating_mul(100) > probe_ns.max(1) {
        return Err(BenchError::ClockResolution {
            granularity_ns,
            round_ns: probe_ns,
        });
    }

    let mut round_ns = vec![Vec::with_capacity(config.rounds); methods.len()];
    for round in 0..config.rounds {
        let start = round % methods.len();
        for offset in 0..methods.len() {
            let k = (start + offset) % methods.len();
            let (ns, acc) = time_round(kernel(methods[k]), &pool, config.calls_per_round);
            round_ns[k].push(ns);
            checksum += acc;
        }
    }

    let timings = methods
        .iter()
        .zip(round_ns)
        .map(|(&method, rounds)| MethodTiming {
            method,
            median_ns_per_call: median_ns(&rounds) / config.calls_per_round as f64,
            round_ns: rounds,
        })
        .collect();
    Ok(BenchReport {
        rounds: config.rounds,
        calls_per_round: config.calls_per_round,
        pool_len: pool.len(),
        timings,
        checksum,
    })
}
