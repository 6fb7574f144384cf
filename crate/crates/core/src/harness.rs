//! Seeded instance generation, oracle cross-checking and benchmarking.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`), which produces the
//! same stream on every platform. Batch item `k` of a run with seed `s`
//! draws its [`GenSpec`] from stream `k` of the generator seeded with `s`,
//! so any single item can be regenerated without replaying the batch.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::audit::audit;
use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::oracles::{exhaustive_anchored_solve, naive_quadratic_solve, pav_isotonic_solve, EXHAUSTIVE_MAX_N};
use crate::solver::{replay, solve, Counters, SolveOptions};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// Instances above this size skip the per-iteration audit during verification.
const DEBUG_AUDIT_MAX_N: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Independent uniform positions in `[0, range]`.
    Uniform,
    /// Points scattered within less than delta of a few random centers.
    Clustered,
    /// Strictly increasing positions with every gap below delta.
    AdversarialSingleChain,
    /// Gaps mostly at least delta, occasionally shorter.
    NearIndependent,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Uniform,
        Family::Clustered,
        Family::AdversarialSingleChain,
        Family::NearIndependent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Clustered => "clustered",
            Family::AdversarialSingleChain => "adversarial_single_chain",
            Family::NearIndependent => "near_independent",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

/// Everything needed to regenerate one instance bit for bit.
///
/// `coord_range` and `delta` are integers in units of `10^-digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub coord_range: i128,
    pub delta: i128,
    pub digits: u32,
    pub family: Family,
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} n={} range={} delta={} digits={} family={}",
            self.seed, self.n, self.coord_range, self.delta, self.digits, self.family
        )
    }
}

/// Positions in generation order (not sorted).
pub fn gen_positions(spec: &GenSpec) -> Result<Vec<i128>> {
    if spec.coord_range <= 0 {
        return Err(Error::InvalidSpec("range must be positive".into()));
    }
    if spec.delta <= 0 {
        return Err(Error::InvalidSpec("delta must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, range, delta) = (spec.n, spec.coord_range, spec.delta);
    let out = match spec.family {
        Family::Uniform => (0..n).map(|_| rng.gen_range(0..=range)).collect(),
        Family::Clustered => {
            let centers: Vec<i128> = (0..n.div_ceil(8).max(1)).map(|_| rng.gen_range(0..=range)).collect();
            (0..n)
                .map(|_| centers[rng.gen_range(0..centers.len())] + rng.gen_range(0..delta))
                .collect()
        }
        Family::AdversarialSingleChain => {
            if delta < 2 && n >= 2 {
                return Err(Error::InvalidSpec(
                    "adversarial_single_chain needs delta of at least 2 units".into(),
                ));
            }
            let mut x = rng.gen_range(0..=range);
            let mut v = Vec::with_capacity(n);
            for k in 0..n {
                if k > 0 {
                    x += rng.gen_range(1..delta);
                }
                v.push(x);
            }
            v
        }
        Family::NearIndependent => {
            let mut x = rng.gen_range(0..=range);
            let mut v = Vec::with_capacity(n);
            for k in 0..n {
                if k > 0 {
                    x += if rng.gen_bool(0.9) {
                        rng.gen_range(delta..=2 * delta)
                    } else {
                        rng.gen_range(0..delta)
                    };
                }
                v.push(x);
            }
            v
        }
    };
    Ok(out)
}

pub fn gen_instance(spec: &GenSpec) -> Result<ProblemInstance<i128>> {
    Ok(ProblemInstance::new(spec.delta, gen_positions(spec)?)?.with_digits(spec.digits))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleChoice {
    Exhaustive,
    Pav,
    Naive,
}

impl OracleChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleChoice::Exhaustive => "exhaustive",
            OracleChoice::Pav => "pav",
            OracleChoice::Naive => "naive",
        }
    }
}

impl FromStr for OracleChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(OracleChoice::Exhaustive),
            "pav" => Ok(OracleChoice::Pav),
            "naive" => Ok(OracleChoice::Naive),
            _ => Err(Error::InvalidSpec(format!("unknown oracle {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub oracle: OracleChoice,
    pub seed: u64,
    /// Item `k` uses `families[k % families.len()]`.
    pub families: Vec<Family>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub spec: GenSpec,
    pub solver_cost: Option<i128>,
    pub oracle_cost: Option<i128>,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub oracle: OracleChoice,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The spec of batch item `index`.
///
/// Deltas are small integers and ranges are tied to `n * delta`, so exact
/// gap ties and coincident points are common.
pub fn batch_item_spec(seed: u64, index: usize, n_min: usize, n_max: usize, families: &[Family]) -> GenSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(n_min..=n_max);
    let delta: i128 = rng.gen_range(2..=10);
    let digits = rng.gen_range(0..=1);
    let stretch: i128 = [1, 2, 4][rng.gen_range(0..3)];
    GenSpec {
        seed: rng.gen(),
        n,
        coord_range: (n as i128 * delta * stretch / 2).max(1),
        delta,
        digits,
        family: families[index % families.len()],
    }
}

pub fn verify_batch(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.n_min > cfg.n_max {
        return Err(Error::InvalidSpec("nmin exceeds nmax".into()));
    }
    if cfg.families.is_empty() {
        return Err(Error::InvalidSpec("no families".into()));
    }
    if cfg.oracle == OracleChoice::Exhaustive && cfg.n_max > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge { n: cfg.n_max, max: EXHAUSTIVE_MAX_N });
    }
    let mismatches: Vec<Mismatch> = (0..cfg.count)
        .into_par_iter()
        .filter_map(|index| {
            let spec = batch_item_spec(cfg.seed, index, cfg.n_min, cfg.n_max, &cfg.families);
            check_one(index, spec, cfg.oracle)
        })
        .collect();
    Ok(VerifyReport { oracle: cfg.oracle, checked: cfg.count, mismatches })
}

fn check_one(index: usize, spec: GenSpec, oracle: OracleChoice) -> Option<Mismatch> {
    let mut problems = Vec::new();
    let mismatch = |problems: Vec<String>, solver_cost, oracle_cost| {
        Some(Mismatch { index, spec, solver_cost, oracle_cost, problems })
    };
    let inst = match gen_instance(&spec) {
        Ok(inst) => inst,
        Err(e) => return mismatch(vec![format!("generation failed: {e}")], None, None),
    };
    let opts = SolveOptions { trace: inst.len() <= DEBUG_AUDIT_MAX_N, debug_audit: inst.len() <= DEBUG_AUDIT_MAX_N };
    let result = match solve(&inst, opts) {
        Ok(r) => r,
        Err(e) => return mismatch(vec![format!("solver failed: {e}")], None, None),
    };
    let report = audit(&inst, &result.configuration);
    problems.extend(report.failures());
    if let Some(trace) = &result.trace {
        match replay(&inst, trace) {
            Ok(cfg) if cfg == result.configuration => {}
            Ok(_) => problems.push("trace replay differs".into()),
            Err(e) => problems.push(format!("trace replay failed: {e}")),
        }
    }
    let oracle_result = match oracle {
        OracleChoice::Exhaustive => exhaustive_anchored_solve(&inst),
        OracleChoice::Pav => pav_isotonic_solve(&inst),
        OracleChoice::Naive => naive_quadratic_solve(&inst),
    };
    let oracle_result = match oracle_result {
        Ok(r) => r,
        Err(e) => {
            problems.push(format!("oracle failed: {e}"));
            return mismatch(problems, Some(result.total_cost), None);
        }
    };
    if oracle_result.best_cost != result.total_cost {
        problems.push("cost differs from oracle".into());
    }
    if oracle == OracleChoice::Naive && oracle_result.witness != result.configuration {
        problems.push("configuration differs from naive solver".into());
    }
    if let Some(optima) = &oracle_result.all_optima {
        if !optima.iter().all(|o| result.configuration.pointwise_le(o)) {
            problems.push("not pointwise below every optimum".into());
        }
        if !optima.contains(&result.configuration) {
            problems.push("not among the anchored optima".into());
        }
    }
    if problems.is_empty() {
        None
    } else {
        mismatch(problems, Some(result.total_cost), Some(oracle_result.best_cost))
    }
}

/// `4 * n * log2(n + 2)`, the allowed number of heap primitives for `n` points.
pub fn heap_ops_bound(n: usize) -> f64 {
    4.0 * n as f64 * ((n + 2) as f64).log2()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub spec: GenSpec,
    /// Median of three runs.
    pub wall_fast: Duration,
    pub wall_naive: Option<Duration>,
    pub counters: Counters,
}

impl BenchRow {
    pub fn within_bound(&self) -> bool {
        self.counters.heap_ops as f64 <= heap_ops_bound(self.spec.n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// Spec of one benchmark cell: delta 10 units, range `10 * n`.
pub fn bench_spec(n: usize, family: Family, seed: u64) -> GenSpec {
    GenSpec {
        seed,
        n,
        coord_range: (10 * n as i128).max(1),
        delta: 10,
        digits: 0,
        family,
    }
}

pub fn bench(sizes: &[usize], families: &[Family], seed: u64, include_naive: bool) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for &family in families {
        for &n in sizes {
            let spec = bench_spec(n, family, seed);
            let inst = gen_instance(&spec)?;
            let mut counters = Counters::default();
            let wall_fast = median_of_three(|| {
                counters = solve(&inst, SolveOptions::default())?.counters;
                Ok(())
            })?;
            let wall_naive = if include_naive {
                Some(median_of_three(|| naive_quadratic_solve(&inst).map(drop))?)
            } else {
                None
            };
            rows.push(BenchRow { spec, wall_fast, wall_naive, counters });
        }
    }
    Ok(BenchReport { rows })
}

fn median_of_three(mut f: impl FnMut() -> Result<()>) -> Result<Duration> {
    let mut times = [Duration::ZERO; 3];
    for t in &mut times {
        let start = Instant::now();
        f()?;
        *t = start.elapsed();
    }
    times.sort();
    Ok(times[1])
}
