//! Transaction ingestion, the maximum-item-threshold filter, and per-level
//! group occurrence counts.
//!
//! A transaction is a multiset of leaf codes: duplicates count both toward
//! the transaction cardinality and toward group occurrence counts. The
//! qualification filter keeps transactions whose cardinality does not exceed
//! the threshold chi; mining then runs on the qualified set only.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::taxonomy::{ItemCode, Taxonomy, TaxonomyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatasetError {
    #[error(transparent)]
    Code(#[from] TaxonomyError),
    #[error("UnknownLeafCode: transaction `{id}` references `{code}`, which is not a leaf of the taxonomy")]
    UnknownLeafCode { id: String, code: String },
    #[error("DuplicateTransactionId: `{0}`")]
    DuplicateTransactionId(String),
    #[error("EmptyTransaction: `{0}` has no items")]
    EmptyTransaction(String),
    #[error("InvalidChi: the maximum item threshold must be at least 1")]
    InvalidChi,
    #[error("LevelOutOfRange: level {level} is not in 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("Io: {0}")]
    Io(String),
    #[error("Csv: {0}")]
    Csv(String),
    #[error("Json: {0}")]
    Json(String),
    #[error("MissingColumn: expected a `{0}` column")]
    MissingColumn(&'static str),
}

/// One transaction: an id plus a multiset of leaf codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    id: String,
    items: Vec<ItemCode>,
}

impl Transaction {
    /// Validate and build a transaction against a taxonomy: every item must
    /// parse at the taxonomy's depth and name a leaf entry.
    pub fn new<I, S>(
        id: impl Into<String>,
        items: I,
        taxonomy: &Taxonomy,
    ) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let id = id.into();
        let mut parsed = Vec::new();
        for item in items {
            let code = taxonomy.parse_code(item.as_ref())?;
            if !taxonomy.is_leaf(&code) {
                return Err(DatasetError::UnknownLeafCode {
                    id,
                    code: code.render(),
                });
            }
            parsed.push(code);
        }
        if parsed.is_empty() {
            return Err(DatasetError::EmptyTransaction(id));
        }
        Ok(Transaction { id, items: parsed })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn items(&self) -> &[ItemCode] {
        &self.items
    }

    /// Total item occurrences, duplicates included.
    pub fn cardinality(&self) -> usize {
        self.items.len()
    }
}

/// Build validated transactions from `(id, items)` records, keeping input
/// order.
pub fn load_transactions<I, S>(
    records: I,
    taxonomy: &Taxonomy,
) -> Result<Vec<Transaction>, DatasetError>
where
    I: IntoIterator<Item = (String, Vec<S>)>,
    S: AsRef<str>,
{
    let mut seen = BTreeSet::new();
    let mut transactions = Vec::new();
    for (id, items) in records {
        if !seen.insert(id.clone()) {
            return Err(DatasetError::DuplicateTransactionId(id));
        }
        transactions.push(Transaction::new(id, items, taxonomy)?);
    }
    Ok(transactions)
}

/// Load a transactions file: CSV with a `transaction_id,items` header
/// (items space-separated), or (for `.json` paths) a JSON array of
/// `{"id": ..., "items": [...]}` objects.
pub fn load_transactions_file(
    path: impl AsRef<Path>,
    taxonomy: &Taxonomy,
) -> Result<Vec<Transaction>, DatasetError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| DatasetError::Io(e.to_string()))?;
    if path.extension().is_some_and(|ext| ext == "json") {
        #[derive(Deserialize)]
        struct Record {
            id: String,
            items: Vec<String>,
        }
        let records: Vec<Record> =
            serde_json::from_str(&text).map_err(|e| DatasetError::Json(e.to_string()))?;
        load_transactions(records.into_iter().map(|r| (r.id, r.items)), taxonomy)
    } else {
        transactions_from_csv(&text, taxonomy)
    }
}

fn transactions_from_csv(
    text: &str,
    taxonomy: &Taxonomy,
) -> Result<Vec<Transaction>, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| DatasetError::Csv(e.to_string()))?
        .clone();
    let id_idx = headers
        .iter()
        .position(|h| h == "transaction_id")
        .ok_or(DatasetError::MissingColumn("transaction_id"))?;
    let items_idx = headers
        .iter()
        .position(|h| h == "items")
        .ok_or(DatasetError::MissingColumn("items"))?;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| DatasetError::Csv(e.to_string()))?;
        let id = row.get(id_idx).unwrap_or("").to_string();
        let items: Vec<String> = row
            .get(items_idx)
            .unwrap_or("")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        records.push((id, items));
    }
    load_transactions(records, taxonomy)
}

/// The qualified transaction set: transactions whose cardinality does not
/// exceed chi, in input order. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualifiedDataset {
    chi: Option<usize>,
    transactions: Vec<Transaction>,
    taxonomy: Taxonomy,
}

/// Apply the maximum-item-threshold filter. `chi = None` keeps everything.
pub fn qualify(
    transactions: Vec<Transaction>,
    chi: Option<usize>,
    taxonomy: &Taxonomy,
) -> Result<QualifiedDataset, DatasetError> {
    if chi == Some(0) {
        return Err(DatasetError::InvalidChi);
    }
    let mut seen = BTreeSet::new();
    for t in &transactions {
        if !seen.insert(t.id().to_string()) {
            return Err(DatasetError::DuplicateTransactionId(t.id().to_string()));
        }
    }
    let qualified = transactions
        .into_iter()
        .filter(|t| chi.is_none_or(|max| t.cardinality() <= max))
        .collect();
    Ok(QualifiedDataset {
        chi,
        transactions: qualified,
        taxonomy: taxonomy.clone(),
    })
}

impl QualifiedDataset {
    pub fn chi(&self) -> Option<usize> {
        self.chi
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn taxonomy(&self) -> &Taxonomy {
        &self.taxonomy
    }

    pub fn transaction(&self, id: &str) -> Option<&Transaction> {
        self.transactions.iter().find(|t| t.id() == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.transactions.iter().map(Transaction::id)
    }
}

/// Per-transaction occurrence counts of one transaction's level-`k` groups.
/// Groups with zero occurrences are omitted, so every stored count is >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRow {
    id: String,
    cardinality: usize,
    counts: BTreeMap<ItemCode, usize>,
}

impl GroupRow {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn counts(&self) -> &BTreeMap<ItemCode, usize> {
        &self.counts
    }

    /// Occurrence count of `group`, zero when absent.
    pub fn count(&self, group: &ItemCode) -> usize {
        self.counts.get(group).copied().unwrap_or(0)
    }
}

/// Level-`k` group tallies for every qualified transaction, in dataset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCounts {
    level: usize,
    rows: Vec<GroupRow>,
}

impl GroupCounts {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rows(&self) -> &[GroupRow] {
        &self.rows
    }

    pub fn row(&self, id: &str) -> Option<&GroupRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// Every group that occurs in at least one transaction.
    pub fn universe(&self) -> BTreeSet<ItemCode> {
        self.rows
            .iter()
            .flat_map(|r| r.counts.keys().cloned())
            .collect()
    }
}

/// Tally each transaction's items by their level-`level` ancestor.
pub fn group_at_level(
    dataset: &QualifiedDataset,
    level: usize,
) -> Result<GroupCounts, DatasetError> {
    let depth = dataset.taxonomy().depth();
    if level < 1 || level > depth {
        return Err(DatasetError::LevelOutOfRange { level, max: depth });
    }
    let rows = dataset
        .transactions()
        .iter()
        .map(|t| {
            let mut counts: BTreeMap<ItemCode, usize> = BTreeMap::new();
            for item in t.items() {
                let group = item
                    .ancestor_at(level)
                    .expect("leaf level equals taxonomy depth >= requested level");
                *counts.entry(group).or_insert(0) += 1;
            }
            GroupRow {
                id: t.id().to_string(),
                cardinality: t.cardinality(),
                counts,
            }
        })
        .collect();
    Ok(GroupCounts { level, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_taxonomy() -> Taxonomy {
        Taxonomy::from_records([
            ("a", "1111"),
            ("b", "1123"),
            ("c", "2112"),
            ("milk", "11**"),
        ])
        .unwrap()
    }

    fn txn(id: &str, items: &[&str], tax: &Taxonomy) -> Transaction {
        Transaction::new(id, items.iter().copied(), tax).unwrap()
    }

    #[test]
    fn cardinality_counts_duplicates() {
        let tax = tiny_taxonomy();
        let t = txn("T1", &["1111", "1111", "2112"], &tax);
        assert_eq!(t.cardinality(), 3);
    }

    #[test]
    fn rejects_unknown_and_internal_codes() {
        let tax = tiny_taxonomy();
        let unknown = Transaction::new("T1", ["7112"], &tax);
        assert!(matches!(unknown, Err(DatasetError::UnknownLeafCode { .. })));
        let internal = Transaction::new("T1", ["11**"], &tax);
        assert!(matches!(
            internal,
            Err(DatasetError::UnknownLeafCode { .. })
        ));
        let malformed = Transaction::new("T1", ["111"], &tax);
        assert!(matches!(malformed, Err(DatasetError::Code(_))));
    }

    #[test]
    fn rejects_empty_transaction_and_duplicate_ids() {
        let tax = tiny_taxonomy();
        assert!(matches!(
            Transaction::new("T1", Vec::<&str>::new(), &tax),
            Err(DatasetError::EmptyTransaction(_))
        ));
        let records = vec![
            ("T1".to_string(), vec!["1111"]),
            ("T1".to_string(), vec!["2112"]),
        ];
        assert!(matches!(
            load_transactions(records, &tax),
            Err(DatasetError::DuplicateTransactionId(_))
        ));
    }

    #[test]
    fn qualify_filters_by_cardinality() {
        let tax = tiny_taxonomy();
        let ts = vec![
            txn("T1", &["1111", "1111", "2112"], &tax),
            txn("T2", &["1111"], &tax),
        ];
        let m = qualify(ts.clone(), Some(2), &tax).unwrap();
        assert_eq!(m.ids().collect::<Vec<_>>(), vec!["T2"]);
        let all = qualify(ts, None, &tax).unwrap();
        assert_eq!(all.len(), 2);
        assert!(matches!(
            qualify(Vec::new(), Some(0), &tax),
            Err(DatasetError::InvalidChi)
        ));
    }

    #[test]
    fn group_counts_tally_ancestors() {
        let tax = tiny_taxonomy();
        let ds = qualify(
            vec![txn("T1", &["1111", "1123", "1123", "2112"], &tax)],
            None,
            &tax,
        )
        .unwrap();
        let level1 = group_at_level(&ds, 1).unwrap();
        let row = level1.row("T1").unwrap();
        assert_eq!(row.count(&ItemCode::parse("1***").unwrap()), 3);
        assert_eq!(row.count(&ItemCode::parse("2***").unwrap()), 1);
        assert_eq!(row.count(&ItemCode::parse("3***").unwrap()), 0);
        assert_eq!(row.cardinality(), 4);

        let level4 = group_at_level(&ds, 4).unwrap();
        let row = level4.row("T1").unwrap();
        assert_eq!(row.count(&ItemCode::parse("1123").unwrap()), 2);
        assert_eq!(row.counts().len(), 3);

        assert!(matches!(
            group_at_level(&ds, 5),
            Err(DatasetError::LevelOutOfRange { level: 5, max: 4 })
        ));
        assert!(matches!(
            group_at_level(&ds, 0),
            Err(DatasetError::LevelOutOfRange { .. })
        ));
    }
}
