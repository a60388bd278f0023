//! Command-line front end: parses a run configuration, executes one subcommand,
//! writes its CSV or JSON report and maps the outcome to an exit code.
//!
//! Exit codes: 0 when every asserted check holds, 1 when one fails, 2 for
//! configuration or runtime errors. Reported-only checks never change the code.

pub mod cache;
pub mod checks;
pub mod commands;
pub mod config;
pub mod fd;
pub mod parse;
pub mod report;
pub mod suite;

use std::ffi::OsString;

use clap::Parser;

pub use config::{Cli, Command, RunConfig};
pub use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Executes a configuration and writes its report; returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let report = match commands::execute(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_CONFIG;
        }
    };
    for s in &report.timing.solves {
        log::info!("timing key={} cache_hit={} seconds={:.3}", s.key, s.cache_hit, s.seconds);
    }
    if let Err(e) = report::write_report(&report, cfg.out.as_deref(), cfg.format) {
        eprintln!("error: {e:#}");
        return EXIT_CONFIG;
    }
    let failed = report.failures();
    let total = report.all_checks().count();
    eprintln!("{}: {total} checks, {failed} asserted failures", report.command);
    if failed > 0 {
        for c in report.all_checks().filter(|c| c.is_failure()).take(10) {
            eprintln!("  FAIL {} p1={} p2={} lhs={} rhs={} margin={}", c.check, c.param1, c.param2, c.lhs, c.rhs, c.margin);
        }
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

/// Parses arguments (clap errors exit 2, help/version exit 0) and runs.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_CONFIG
        }
    }
}
