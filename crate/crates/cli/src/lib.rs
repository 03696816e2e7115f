//! The `fuzzmine` command line: load a taxonomy and transactions, qualify,
//! mine frequent itemsets level by level, derive rules, and emit a
//! deterministic report.
//!
//! Exit codes: 0 success, 1 input validation failure (files, codes,
//! transactions), 2 configuration failure (flags, thresholds). Set the
//! `FUZZMINE_LOG` environment variable (e.g. `info`) for timing and
//! progress diagnostics on standard error.

pub mod args;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::Parser;
use fuzzmine::dataset::{load_transactions_file, qualify, DatasetError};
use fuzzmine::miner::{mine, MineError, MiningConfig};
use fuzzmine::numeric::parse_number;
use fuzzmine::rules::generate_rules;
use fuzzmine::taxonomy::load_taxonomy;

use args::Cli;

/// How a failed run maps onto an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the inputs could not be validated.
    Input(String),
    /// Exit 2: the requested configuration is unusable.
    Config(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Config(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Config(m) => m,
        }
    }
}

/// Parse arguments, run, and report; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return code;
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter("FUZZMINE_LOG")).try_init();
    match execute(cli) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let thresholds = args::parse_min_support(&cli.min_support).map_err(Failure::Config)?;
    let min_confidence = cli
        .min_confidence
        .as_deref()
        .map(|text| {
            parse_number(text)
                .map_err(|e| Failure::Config(format!("invalid --min-confidence: {e}")))
        })
        .transpose()?;

    let started = Instant::now();
    let taxonomy = load_taxonomy(&cli.taxonomy).map_err(|e| Failure::Input(e.to_string()))?;
    let transactions = load_transactions_file(&cli.transactions, &taxonomy)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let total = transactions.len();
    log::info!(
        "loaded {} taxonomy entries, {} transactions in {:?}",
        taxonomy.len(),
        total,
        started.elapsed()
    );

    let dataset = qualify(transactions, cli.chi, &taxonomy).map_err(|e| match e {
        DatasetError::InvalidChi => Failure::Config(e.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    log::info!("{} of {} transactions qualified", dataset.len(), total);

    let config = MiningConfig {
        chi: cli.chi,
        min_support: thresholds,
        max_itemset_size: cli.max_itemset_size,
        max_level: cli.max_level,
        descent: cli.descent.into(),
        mode: cli.mode.into(),
    };
    let mining_started = Instant::now();
    let result = mine(&dataset, &config).map_err(|e| match e {
        MineError::Support(_) | MineError::Dataset(_) => Failure::Input(e.to_string()),
        config_error => Failure::Config(config_error.to_string()),
    })?;
    let rules = generate_rules(&result, min_confidence.as_ref());
    log::info!(
        "mined {} tables, {} rules in {:?}",
        result.tables().len(),
        rules.len(),
        mining_started.elapsed()
    );

    let report = report::build_report(
        &result,
        &rules,
        total,
        min_confidence.map(|c| c.to_string()),
    );
    let rendered = report::emit(&report, cli.format.into());
    match &cli.output {
        Some(path) => {
            fs::write(path, rendered).map_err(|e| Failure::Input(format!("Io: {e}")))?;
        }
        None => print!("{rendered}"),
    }
    log::info!("run finished in {:?}", started.elapsed());
    Ok(())
}
