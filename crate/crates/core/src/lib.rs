//! Fuzzy multilevel association rule mining over positional item taxonomies.
//!
//! Items live in a fixed-depth hierarchy encoded as digit strings padded
//! with `*` (`1***` contains `11**` contains `111*` contains the leaf
//! `1112`); transactions hold multisets of leaf codes. Mining runs top-down,
//! one level at a time: items are grouped by their first `k` digits, a
//! group's membership in a transaction is its occurrence count over the
//! transaction cardinality, an itemset's membership is the minimum over its
//! groups, and support sums memberships across the qualified transactions.
//! Each level has its own minimum support; frequent itemsets grow through
//! the classic candidate join/prune, and rules are scored by confidence.
//!
//! ```
//! use fuzzmine::dataset::{load_transactions, qualify};
//! use fuzzmine::miner::{mine, MiningConfig, SupportThresholds};
//! use fuzzmine::numeric::ratio;
//! use fuzzmine::taxonomy::Taxonomy;
//!
//! let taxonomy = Taxonomy::from_records([
//!     ("espresso", "111"),
//!     ("filter coffee", "112"),
//!     ("green tea", "211"),
//! ])?;
//! let transactions = load_transactions(
//!     [
//!         ("c1".to_string(), vec!["111", "211"]),
//!         ("c2".to_string(), vec!["111", "112", "111"]),
//!     ],
//!     &taxonomy,
//! )?;
//! let dataset = qualify(transactions, Some(5), &taxonomy)?;
//! let config = MiningConfig {
//!     chi: Some(5),
//!     min_support: SupportThresholds::uniform(ratio(1, 2), 3),
//!     ..MiningConfig::default()
//! };
//! let result = mine(&dataset, &config)?;
//! assert_eq!(result.table(1, 1).unwrap().len(), 2); // {1**} and {2**}
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod dataset;
pub mod fuzzy;
pub mod itemset;
pub mod miner;
pub mod numeric;
pub mod oracle;
pub mod rules;
pub mod taxonomy;

pub use dataset::{qualify, GroupCounts, QualifiedDataset, Transaction};
pub use fuzzy::{ArithmeticMode, SupportValue};
pub use itemset::Itemset;
pub use miner::{
    mine, DescentPolicy, FrequentTable, MiningConfig, MiningResult, SupportThresholds,
};
pub use rules::{generate_rules, AssociationRule};
pub use taxonomy::{ItemCode, Taxonomy};
