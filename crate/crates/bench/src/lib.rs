//! Pool-size sweeps over the shipped nets.
//!
//! Every timed run is checked against the reference oracles before its
//! timing is kept; a wrong answer aborts the sweep.

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};
use inet_core::reference::{fib_oracle, sort_oracle};
use inet_core::systems::{arith, list, seeded_list, InitialNet};
use inet_core::{Evaluator, InteractionStats, NetError, PoolError, ReadBack, WorkerPool};

pub const CSV_HEADER: [&str; 6] = [
    "system",
    "input",
    "pool_size",
    "mean_ms",
    "stddev_ms",
    "speedup",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    Fib,
    Qsort,
    Msort,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Fib => "fib",
            System::Qsort => "qsort",
            System::Msort => "msort",
        })
    }
}

/// Benchmark configuration, parsed from the command line.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "inet-bench",
    version,
    about = "Time interaction-net reduction across worker-pool sizes"
)]
pub struct BenchConfig {
    /// Net to reduce
    #[arg(long, value_enum)]
    pub system: System,
    /// Fibonacci input (fib only)
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// List length (qsort, msort)
    #[arg(long)]
    pub len: Option<usize>,
    /// Seed of the pseudo-random input list
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Worker-pool sizes to sweep
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8",
          value_parser = clap::value_parser!(u16).range(1..))]
    pub pools: Vec<u16>,
    /// Timed repetitions per pool size (one extra warm-up run is discarded)
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub reps: u32,
    /// Fibonacci inputs at or below this are computed sequentially
    #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
    pub cutoff: i64,
    /// Write the CSV report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a DOT snapshot of the unreduced net here ("-" for standard output)
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Print per-rule interaction counts
    #[arg(long)]
    pub stats: bool,
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<BenchConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = BenchConfig::try_parse_from(argv)?;
    cfg.validate()?;
    Ok(cfg)
}

impl BenchConfig {
    fn validate(&self) -> Result<(), clap::Error> {
        let usage = |kind, msg: &str| Err(BenchConfig::command().error(kind, msg));
        match self.system {
            System::Fib if self.n.is_none() => {
                return usage(
                    ErrorKind::MissingRequiredArgument,
                    "--system fib requires --n",
                )
            }
            System::Fib if self.len.is_some() => {
                return usage(
                    ErrorKind::ArgumentConflict,
                    "--len only applies to qsort and msort",
                )
            }
            System::Qsort | System::Msort if self.len.is_none() => {
                return usage(
                    ErrorKind::MissingRequiredArgument,
                    "--system qsort/msort requires --len",
                )
            }
            System::Qsort | System::Msort if self.n.is_some() => {
                return usage(ErrorKind::ArgumentConflict, "--n only applies to fib")
            }
            _ => {}
        }
        let mut seen = self.pools.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.pools.len() {
            return usage(ErrorKind::ValueValidation, "--pools must be distinct");
        }
        Ok(())
    }

    /// Input column of the report.
    pub fn input_label(&self) -> String {
        match self.system {
            System::Fib => format!("n={}", self.n.unwrap_or_default()),
            System::Qsort | System::Msort => {
                format!("len={} seed={}", self.len.unwrap_or_default(), self.seed)
            }
        }
    }

    /// Pool sizes in report order.
    pub fn sorted_pools(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pools.iter().map(|&n| n as usize).collect();
        p.sort_unstable();
        p
    }

    /// DOT snapshot of the net a run reduces.
    pub fn dot_snapshot(&self) -> Result<String, BenchError> {
        Ok(match self.system {
            System::Fib => arith::fib_initial(self.n.unwrap_or_default(), self.cutoff)?.to_dot(),
            System::Qsort => list::quicksort_initial(&self.list()).to_dot(),
            System::Msort => list::mergesort_initial(&self.list()).to_dot(),
        })
    }

    fn list(&self) -> Vec<i64> {
        seeded_list(self.len.unwrap_or_default(), self.seed)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(
        "correctness fault: {system} {input} on pool {pool_size} gave {got}, expected {expected}"
    )]
    Correctness {
        system: String,
        input: String,
        pool_size: usize,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Pool(#[from] PoolError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Timing of one pool size.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub system: String,
    pub input: String,
    pub pool_size: usize,
    pub mean_ms: f64,
    pub stddev_ms: f64,
    pub speedup: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    /// One row per pool size, ascending.
    pub rows: Vec<Row>,
    /// Per-rule counts of the last timed run.
    pub stats: InteractionStats,
}

/// Fails with a correctness fault unless `got == expected`.
pub fn gate<T: PartialEq + fmt::Debug>(
    cfg: &BenchConfig,
    pool_size: usize,
    expected: &T,
    got: &T,
) -> Result<(), BenchError> {
    if got == expected {
        return Ok(());
    }
    let short = |v: &T| {
        let s = format!("{v:?}");
        if s.len() > 80 {
            format!("{}...", &s[..77])
        } else {
            s
        }
    };
    Err(BenchError::Correctness {
        system: cfg.system.to_string(),
        input: cfg.input_label(),
        pool_size,
        expected: short(expected),
        got: short(got),
    })
}

struct Timing {
    samples_ms: Vec<f64>,
    stats: InteractionStats,
}

/// Times `reps` reductions on `pool` after one discarded warm-up. Net
/// construction is outside the timed region.
fn time_on<V: ReadBack>(
    cfg: &BenchConfig,
    pool: &WorkerPool,
    build: &dyn Fn() -> Result<InitialNet<V>, BenchError>,
    expected: &V::Value,
) -> Result<Timing, BenchError>
where
    V::Value: PartialEq + fmt::Debug,
{
    let eval = Evaluator::parallel(pool);
    let mut samples_ms = Vec::with_capacity(cfg.reps as usize);
    let mut stats = InteractionStats::default();
    for run in 0..=cfg.reps {
        let net = build()?;
        let start = Instant::now();
        let out = eval.reduce(net)?;
        let elapsed = start.elapsed();
        let got = out.values.into_iter().next().expect("one interface name");
        gate(cfg, pool.size(), expected, &got)?;
        if run > 0 {
            samples_ms.push(elapsed.as_secs_f64() * 1e3);
            stats = out.stats;
        }
    }
    Ok(Timing { samples_ms, stats })
}

fn sweep<V: ReadBack>(
    cfg: &BenchConfig,
    build: &dyn Fn() -> Result<InitialNet<V>, BenchError>,
    expected: &V::Value,
) -> Result<BenchReport, BenchError>
where
    V::Value: PartialEq + fmt::Debug,
{
    let mut report = BenchReport::default();
    for size in cfg.sorted_pools() {
        let pool = WorkerPool::new(size)?;
        let t = time_on(cfg, &pool, build, expected)?;
        let (mean, sd) = mean_stddev(&t.samples_ms);
        report.rows.push(Row {
            system: cfg.system.to_string(),
            input: cfg.input_label(),
            pool_size: size,
            mean_ms: mean,
            stddev_ms: sd,
            speedup: 1.0,
        });
        report.stats = t.stats;
    }
    apply_speedups(&mut report.rows);
    Ok(report)
}

/// `speedup = mean(baseline) / mean(row)`, where the baseline is the pool of
/// one worker, or the smallest pool swept if one worker is not.
pub fn apply_speedups(rows: &mut [Row]) {
    let Some(base) = rows
        .iter()
        .min_by_key(|r| r.pool_size)
        .map(|r| (r.pool_size, r.mean_ms))
    else {
        return;
    };
    for r in rows {
        r.speedup = if r.pool_size == base.0 {
            1.0
        } else {
            base.1 / r.mean_ms
        };
    }
}

/// Mean and sample standard deviation (zero for a single sample).
pub fn mean_stddev(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs the configured sweep.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    match cfg.system {
        System::Fib => {
            let n = cfg.n.unwrap_or_default();
            let expected = fib_oracle(n)?;
            // Rejects inputs the net cannot represent before any timing.
            arith::fib_initial(n, cfg.cutoff)?;
            sweep(cfg, &|| Ok(arith::fib_initial(n, cfg.cutoff)?), &expected)
        }
        System::Qsort => {
            let xs = cfg.list();
            sweep(cfg, &|| Ok(list::quicksort_initial(&xs)), &sort_oracle(&xs))
        }
        System::Msort => {
            let xs = cfg.list();
            sweep(cfg, &|| Ok(list::mergesort_initial(&xs)), &sort_oracle(&xs))
        }
    }
}

/// Writes the report as CSV to `w`.
pub fn write_csv_to<W: Write>(report: &BenchReport, w: W) -> Result<(), BenchError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in &report.rows {
        out.write_record([
            r.system.clone(),
            r.input.clone(),
            r.pool_size.to_string(),
            r.mean_ms.to_string(),
            r.stddev_ms.to_string(),
            r.speedup.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Writes the report as CSV to `path`.
pub fn write_csv(report: &BenchReport, path: &Path) -> Result<(), BenchError> {
    write_csv_to(report, File::create(path)?)
}

/// Parses a CSV report back into rows.
pub fn read_csv(path: &Path) -> Result<Vec<Row>, BenchError> {
    let mut rd = csv::Reader::from_path(path)?;
    let bad = |what: &str| {
        BenchError::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("bad {what} column"),
        ))
    };
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let num = |i: usize| rec.get(i).and_then(|s| s.parse::<f64>().ok());
        rows.push(Row {
            system: rec.get(0).ok_or_else(|| bad("system"))?.to_owned(),
            input: rec.get(1).ok_or_else(|| bad("input"))?.to_owned(),
            pool_size: rec
                .get(2)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("pool_size"))?,
            mean_ms: num(3).ok_or_else(|| bad("mean_ms"))?,
            stddev_ms: num(4).ok_or_else(|| bad("stddev_ms"))?,
            speedup: num(5).ok_or_else(|| bad("speedup"))?,
        });
    }
    Ok(rows)
}
