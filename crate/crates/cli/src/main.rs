use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use chern_cli::{report, run_suite_with_jobs, Format, SuiteConfig};

/// Runs verification suites and writes a JSON or CSV report.
#[derive(Debug, Parser)]
#[command(name = "chern-verify", version)]
struct Args {
    /// Suite to run, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Global seed (overrides the config file).
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override for the selected suite(s).
    #[arg(long)]
    tol: Option<f64>,
    /// Config file in `key = value` format.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads; 0 uses every core, 1 runs serially.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn run(args: Args) -> anyhow::Result<bool> {
    let mut cfg = match &args.config {
        Some(p) => SuiteConfig::from_file(p)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(t) = args.tol {
        let names: Vec<&str> = if args.suite == "all" { chern_cli::SUITES.to_vec() } else { vec![args.suite.as_str()] };
        for n in names {
            cfg.set(&format!("tol.{n}"), &t.to_string())?;
        }
    }
    let jobs = if args.jobs == 0 { std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1) } else { args.jobs };
    let records = run_suite_with_jobs(&args.suite, &cfg, jobs)?;
    match &args.out {
        Some(path) => report(&records, args.format, path)?,
        None => {
            let text = match args.format {
                Format::Json => chern_cli::report::to_json(&records)?,
                Format::Csv => chern_cli::report::to_csv(&records)?,
            };
            println!("{text}");
        }
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    eprintln!("{} records, {} failed", records.len(), failed);
    for r in records.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {}/{} [{}] residual {:.3e} > {:.3e}", r.suite, r.check, r.case, r.residual_value(), r.tolerance);
    }
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
