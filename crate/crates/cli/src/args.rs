//! Command-line surface and flag parsing.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fuzzmine::fuzzy::ArithmeticMode;
use fuzzmine::miner::{DescentPolicy, SupportThresholds};
use fuzzmine::numeric::{parse_number, ratio, Rational};

use crate::report::ReportFormat;

#[derive(Debug, Parser)]
#[command(
    name = "fuzzmine",
    version,
    about = "Mine fuzzy multilevel association rules from a transaction database"
)]
pub struct Cli {
    /// Taxonomy file: CSV with a `name,code` header, or a JSON object of
    /// name-to-code entries.
    #[arg(long, value_name = "PATH")]
    pub taxonomy: PathBuf,

    /// Transactions file: CSV with a `transaction_id,items` header (items
    /// space-separated), or a JSON array of {id, items} objects.
    #[arg(long, value_name = "PATH")]
    pub transactions: PathBuf,

    /// Maximum item threshold: transactions holding more items are excluded
    /// from mining. Unlimited when omitted.
    #[arg(long, value_name = "N")]
    pub chi: Option<usize>,

    /// Minimum support for one level, `LEVEL:VALUE`, or for one level and
    /// itemset size, `LEVEL,SIZE:VALUE`. Values are decimals or `p/q`
    /// rationals. Repeat per level.
    #[arg(long = "min-support", value_name = "SPEC")]
    pub min_support: Vec<String>,

    /// Drop rules whose confidence falls below this value.
    #[arg(long = "min-confidence", value_name = "R")]
    pub min_confidence: Option<String>,

    /// Largest itemset size mined at each level.
    #[arg(long = "max-itemset-size", value_name = "Q", default_value_t = 4)]
    pub max_itemset_size: usize,

    /// Deepest taxonomy level to mine; defaults to the taxonomy depth.
    #[arg(long = "max-level", value_name = "K")]
    pub max_level: Option<usize>,

    /// Arithmetic: exact rationals, or per-transaction truncation to two
    /// decimals before summing.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Which groups enter each level: every group present, or only
    /// descendants of the previous level's frequent items.
    #[arg(long, value_enum, default_value_t = DescentArg::All)]
    pub descent: DescentArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Write the report to this path instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Compat,
}

impl From<ModeArg> for ArithmeticMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Exact => ArithmeticMode::Exact,
            ModeArg::Compat => ArithmeticMode::Compat,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DescentArg {
    All,
    FrequentDescendants,
}

impl From<DescentArg> for DescentPolicy {
    fn from(arg: DescentArg) -> Self {
        match arg {
            DescentArg::All => DescentPolicy::AllGroups,
            DescentArg::FrequentDescendants => DescentPolicy::FrequentDescendantsOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

/// Parse repeated `--min-support` specs into thresholds.
pub fn parse_min_support(specs: &[String]) -> Result<SupportThresholds, String> {
    let mut thresholds = SupportThresholds::new();
    for spec in specs {
        let (selector, value) = spec
            .split_once(':')
            .ok_or_else(|| bad_spec(spec, "expected LEVEL:VALUE or LEVEL,SIZE:VALUE"))?;
        let value: Rational = parse_number(value).map_err(|e| bad_spec(spec, &e.to_string()))?;
        if value <= ratio(0, 1) {
            return Err(bad_spec(spec, "threshold must be positive"));
        }
        match selector.split_once(',') {
            None => {
                let level = parse_index(selector, "level").map_err(|m| bad_spec(spec, &m))?;
                thresholds.set_level(level, value);
            }
            Some((level, size)) => {
                let level = parse_index(level, "level").map_err(|m| bad_spec(spec, &m))?;
                let size = parse_index(size, "size").map_err(|m| bad_spec(spec, &m))?;
                thresholds.set_level_size(level, size, value);
            }
        }
    }
    Ok(thresholds)
}

fn parse_index(text: &str, what: &str) -> Result<usize, String> {
    match text.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("{what} must be a positive integer, got `{text}`")),
    }
}

fn bad_spec(spec: &str, reason: &str) -> String {
    format!("invalid --min-support `{spec}`: {reason}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specs(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_level_and_size_specs() {
        let t = parse_min_support(&specs(&["1:0.36", "2:0.3", "2,3:1/4"])).unwrap();
        assert_eq!(t.get(1, 1), Some(&ratio(9, 25)));
        assert_eq!(t.get(2, 1), Some(&ratio(3, 10)));
        assert_eq!(t.get(2, 3), Some(&ratio(1, 4)));
        assert_eq!(t.get(3, 1), None);
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["1", "1:", "x:0.3", "0:0.3", "1,0:0.3", "1:abc"] {
            assert!(parse_min_support(&specs(&[bad])).is_err(), "accepted {bad}");
        }
        let err = parse_min_support(&specs(&["1:0"])).unwrap_err();
        assert!(err.contains("positive"), "{err}");
    }

    #[test]
    fn later_specs_override_earlier() {
        let t = parse_min_support(&specs(&["1:0.3", "1:0.4"])).unwrap();
        assert_eq!(t.get(1, 1), Some(&ratio(2, 5)));
    }
}
