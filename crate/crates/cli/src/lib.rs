//! Batch verification harness: grid configuration, check execution and JSON reports.

pub mod checks;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::{Cli, RunConfig, Suite, UsageError};
pub use report::{CheckResult, Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs every selected check; the thread pool is sized by `jobs`.
pub fn run(cfg: RunConfig) -> Report {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    let (results, convention) = pool.install(|| checks::run_checks(&cfg));
    Report::new(cfg, convention, results)
}

/// Parses arguments, runs, writes the report and the summary; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("usage error: {e}");
            return EXIT_USAGE;
        }
    };
    let path = cfg.report_path.clone();
    let report = run(cfg);
    if let Some(path) = path {
        if let Err(e) = report.write(&path) {
            eprintln!("cannot write report {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }
    let stdout = std::io::stdout();
    let _ = report.summary(&mut stdout.lock());
    let _ = stdout.lock().flush();
    report.exit_code()
}
