//! Verification suites. Each suite is a list of independent cases; cases
//! run in parallel and draw randomness from `(seed, case id)` only.

use std::time::Instant;

use rayon::prelude::*;

use crate::config::{SuiteConfig, SUITES};
use crate::report::ReportRecord;
use crate::CliError;

mod cocycles;
mod comb;
mod duhamel;
mod heat;
mod index;
mod main_theorem;
mod signs;
mod sphere;
mod thm412;
mod xext;

/// One unit of parallel work.
pub(crate) type Task = Box<dyn FnOnce() -> Vec<ReportRecord> + Send>;

/// Wraps a fallible case so that errors surface as failing records.
pub(crate) fn task<F>(suite: &'static str, check: &'static str, case: String, f: F) -> Task
where
    F: FnOnce() -> chern_core::Result<Vec<ReportRecord>> + Send + 'static,
{
    Box::new(move || {
        let start = Instant::now();
        let recs = match f() {
            Ok(r) => r,
            Err(e) => {
                vec![ReportRecord::flag(suite, check, format!("{case};error={e}"), false)]
            }
        };
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let per = ms / recs.len().max(1) as f64;
        recs.into_iter().map(|r| r.with_wall_ms(per)).collect()
    })
}

fn tasks_for(name: &str, cfg: &SuiteConfig) -> Result<Vec<Task>, CliError> {
    Ok(match name {
        "signs" => signs::tasks(cfg),
        "xext" => xext::tasks(cfg),
        "cocycles" => cocycles::tasks(cfg),
        "index" => index::tasks(cfg),
        "duhamel" => duhamel::tasks(cfg),
        "comb" => comb::tasks(cfg),
        "heat" => heat::tasks(cfg),
        "thm412" => thm412::tasks(cfg),
        "main" => main_theorem::tasks(cfg),
        "sphere" => sphere::tasks(cfg),
        _ => return Err(CliError::UnknownSuite(name.to_string())),
    })
}

/// Runs a suite (or `all`) on the current rayon pool.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<ReportRecord>, CliError> {
    cfg.validate()?;
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut tasks = Vec::new();
    for n in names {
        tasks.extend(tasks_for(n, cfg)?);
    }
    let out: Vec<Vec<ReportRecord>> = tasks.into_par_iter().map(|t| t()).collect();
    Ok(out.into_iter().flatten().collect())
}

/// Runs a suite on a dedicated pool with `jobs` threads (`1` is serial).
pub fn run_suite_with_jobs(name: &str, cfg: &SuiteConfig, jobs: usize) -> Result<Vec<ReportRecord>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_suite(name, cfg))
}

/// `key=value;…` case label.
pub(crate) fn case(parts: &[(&str, String)]) -> String {
    parts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}
