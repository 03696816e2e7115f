//! Run reports and their serializations.
//!
//! Reports are deterministic: entry order follows the miner's (level, size)
//! table order, values serialize as two-digit decimals in compat mode and
//! `p/q` rationals in exact mode, and no wall-clock data is embedded, so
//! identical inputs produce byte-identical output.

use fuzzmine::fuzzy::{ArithmeticMode, SupportValue};
use fuzzmine::miner::MiningResult;
use fuzzmine::numeric::format_centi;
use fuzzmine::rules::AssociationRule;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub dataset: DatasetSummary,
    pub frequent_itemsets: Vec<ItemsetEntry>,
    pub rules: Vec<RuleEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub descent: String,
    pub chi: Option<usize>,
    pub min_support: Vec<ThresholdEcho>,
    pub min_confidence: Option<String>,
    pub max_itemset_size: usize,
    pub max_level: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdEcho {
    pub level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DatasetSummary {
    pub transactions_total: usize,
    pub transactions_qualified: usize,
    pub chi: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ItemsetEntry {
    pub level: usize,
    pub size: usize,
    pub itemset: Vec<String>,
    pub support: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleEntry {
    pub level: usize,
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub support: String,
    pub confidence: String,
}

fn support_string(support: &SupportValue, mode: ArithmeticMode) -> String {
    match (mode, support.compat()) {
        (ArithmeticMode::Compat, Some(c)) => format_centi(c),
        _ => support.exact().to_string(),
    }
}

/// Assemble the report for one run.
pub fn build_report(
    result: &MiningResult,
    rules: &[AssociationRule],
    transactions_total: usize,
    min_confidence: Option<String>,
) -> RunReport {
    let config = result.config();
    let mode = result.mode();
    let depth = result.dataset().taxonomy().depth();

    let mut min_support: Vec<ThresholdEcho> = config
        .min_support
        .base_levels()
        .map(|(level, beta)| ThresholdEcho {
            level,
            size: None,
            value: beta.to_string(),
        })
        .collect();
    min_support.extend(
        config
            .min_support
            .size_overrides()
            .map(|(level, size, beta)| ThresholdEcho {
                level,
                size: Some(size),
                value: beta.to_string(),
            }),
    );

    let frequent_itemsets = result
        .tables()
        .iter()
        .flat_map(|table| {
            table
                .entries()
                .iter()
                .map(|(itemset, support)| ItemsetEntry {
                    level: table.level(),
                    size: table.size(),
                    itemset: itemset.iter().map(|c| c.render()).collect(),
                    support: support_string(support, mode),
                })
        })
        .collect();

    let rules = rules
        .iter()
        .map(|rule| RuleEntry {
            level: rule.level(),
            antecedent: rule.antecedent().iter().map(|c| c.render()).collect(),
            consequent: rule.consequent().iter().map(|c| c.render()).collect(),
            support: support_string(rule.support(), mode),
            confidence: rule.confidence_display(),
        })
        .collect();

    RunReport {
        config: ConfigEcho {
            mode: mode.to_string(),
            descent: config.descent.to_string(),
            chi: config.chi,
            min_support,
            min_confidence,
            max_itemset_size: config.max_itemset_size,
            max_level: config.max_level.unwrap_or(depth),
        },
        dataset: DatasetSummary {
            transactions_total,
            transactions_qualified: result.dataset().len(),
            chi: result.dataset().chi(),
        },
        frequent_itemsets,
        rules,
    }
}

/// Serialize a report; byte-identical for identical reports.
pub fn emit(report: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Text => emit_text(report),
    }
}

fn emit_csv(report: &RunReport) -> String {
    let mut out = String::new();
    let mut current: Option<(usize, usize)> = None;
    for entry in &report.frequent_itemsets {
        if current != Some((entry.level, entry.size)) {
            if current.is_some() {
                out.push('\n');
            }
            out.push_str("level,size,itemset,support\n");
            current = Some((entry.level, entry.size));
        }
        out.push_str(&format!(
            "{},{},{},{}\n",
            entry.level,
            entry.size,
            entry.itemset.join(" "),
            entry.support
        ));
    }
    if current.is_some() {
        out.push('\n');
    }
    out.push_str("level,antecedent,consequent,support,confidence\n");
    for rule in &report.rules {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            rule.level,
            rule.antecedent.join(" "),
            rule.consequent.join(" "),
            rule.support,
            rule.confidence
        ));
    }
    out
}

fn emit_text(report: &RunReport) -> String {
    let mut out = String::new();
    let d = &report.dataset;
    let chi = d
        .chi
        .map(|c| c.to_string())
        .unwrap_or_else(|| "unlimited".into());
    out.push_str(&format!(
        "Dataset: {} transactions, {} qualified (chi = {chi})\n",
        d.transactions_total, d.transactions_qualified
    ));
    out.push_str(&format!(
        "Mode: {} | Descent: {} | Max itemset size: {} | Max level: {}\n",
        report.config.mode,
        report.config.descent,
        report.config.max_itemset_size,
        report.config.max_level
    ));

    let mut current: Option<(usize, usize)> = None;
    for entry in &report.frequent_itemsets {
        if current != Some((entry.level, entry.size)) {
            // Size overrides come after base levels, so the last match wins.
            let beta = report
                .config
                .min_support
                .iter()
                .rfind(|t| {
                    t.level == entry.level && (t.size.is_none() || t.size == Some(entry.size))
                })
                .map(|t| t.value.clone())
                .unwrap_or_default();
            out.push_str(&format!(
                "\nFrequent {}-itemsets at level {} (min support {beta}):\n",
                entry.size, entry.level
            ));
            current = Some((entry.level, entry.size));
        }
        out.push_str(&format!(
            "  {{{}}}  {}\n",
            entry.itemset.join(", "),
            entry.support
        ));
    }

    out.push_str(&format!("\nRules ({}):\n", report.rules.len()));
    for rule in &report.rules {
        out.push_str(&format!(
            "  {{{}}} => {{{}}}  support {}  confidence {}\n",
            rule.antecedent.join(", "),
            rule.consequent.join(", "),
            rule.support,
            rule.confidence
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuzzmine::dataset::{qualify, Transaction};
    use fuzzmine::miner::{mine, MiningConfig, SupportThresholds};
    use fuzzmine::numeric::ratio;
    use fuzzmine::rules::generate_rules;
    use fuzzmine::taxonomy::Taxonomy;

    fn sample_report(mode: ArithmeticMode) -> RunReport {
        let tax = Taxonomy::from_records([("a", "11"), ("b", "21")]).unwrap();
        let ts = vec![
            Transaction::new("T1", ["11", "21"], &tax).unwrap(),
            Transaction::new("T2", ["11"], &tax).unwrap(),
        ];
        let ds = qualify(ts, Some(6), &tax).unwrap();
        let config = MiningConfig {
            chi: Some(6),
            min_support: SupportThresholds::uniform(ratio(1, 4), 2),
            mode,
            ..MiningConfig::default()
        };
        let result = mine(&ds, &config).unwrap();
        let rules = generate_rules(&result, None);
        build_report(&result, &rules, 2, None)
    }

    #[test]
    fn json_entries_have_flat_shape() {
        let report = sample_report(ArithmeticMode::Compat);
        let json = emit(&report, ReportFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let first = &value["frequent_itemsets"][0];
        assert_eq!(first["level"], 1);
        assert_eq!(first["size"], 1);
        assert_eq!(first["itemset"], serde_json::json!(["1*"]));
        assert_eq!(first["support"], "1.50");
        assert_eq!(value["dataset"]["transactions_qualified"], 2);
    }

    #[test]
    fn exact_mode_serializes_rationals() {
        let report = sample_report(ArithmeticMode::Exact);
        let json = emit(&report, ReportFormat::Json);
        assert!(json.contains("\"support\": \"3/2\""), "{json}");
    }

    #[test]
    fn emission_is_deterministic() {
        let report = sample_report(ArithmeticMode::Compat);
        for format in [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Text] {
            assert_eq!(emit(&report, format), emit(&report, format));
        }
    }

    #[test]
    fn empty_report_is_valid() {
        let tax = Taxonomy::from_records([("a", "11")]).unwrap();
        let ds = qualify(Vec::new(), None, &tax).unwrap();
        let config = MiningConfig {
            min_support: SupportThresholds::uniform(ratio(1, 4), 2),
            ..MiningConfig::default()
        };
        let result = mine(&ds, &config).unwrap();
        let report = build_report(&result, &[], 0, None);
        assert!(report.frequent_itemsets.is_empty());
        let csv = emit(&report, ReportFormat::Csv);
        assert_eq!(csv, "level,antecedent,consequent,support,confidence\n");
        let json = emit(&report, ReportFormat::Json);
        assert!(serde_json::from_str::<serde_json::Value>(&json).is_ok());
    }

    #[test]
    fn csv_sections_per_table() {
        let report = sample_report(ArithmeticMode::Compat);
        let csv = emit(&report, ReportFormat::Csv);
        assert!(csv.starts_with("level,size,itemset,support\n1,1,"));
        assert!(csv.contains("\nlevel,antecedent,consequent,support,confidence\n"));
        // {1*} support 1.5, {2*} 0.5, pair 0.5 at level 1; {11} etc at level 2.
        assert!(csv.contains("1,2,1* 2*,0.50\n"), "{csv}");
    }
}
