use std::io::{self, Write};
use std::process::ExitCode;

use inet_bench::{parse_args, run_benchmark, write_csv, write_csv_to, BenchConfig};

fn run(cfg: &BenchConfig) -> Result<(), inet_bench::BenchError> {
    if let Some(path) = &cfg.dot {
        let dot = cfg.dot_snapshot()?;
        if path.as_os_str() == "-" {
            io::stdout().write_all(dot.as_bytes())?;
        } else {
            std::fs::write(path, dot)?;
        }
    }
    let report = run_benchmark(cfg)?;
    for r in &report.rows {
        eprintln!(
            "{} {} pool={}: mean {:.3} ms, sd {:.3} ms, speedup {:.2}",
            r.system, r.input, r.pool_size, r.mean_ms, r.stddev_ms, r.speedup
        );
    }
    if cfg.stats {
        eprint!("{}", report.stats);
    }
    match &cfg.out {
        Some(path) => write_csv(&report, path),
        None => write_csv_to(&report, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => e.exit(),
    };
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("inet-bench: {e}");
            ExitCode::FAILURE
        }
    }
}
