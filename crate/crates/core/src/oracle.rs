//! Brute-force reference miner for equivalence testing.
//!
//! This path deliberately shares nothing with the grouping/support kernel:
//! memberships are recomputed per itemset by scanning raw transaction items
//! and comparing digit prefixes, and every level-local itemset up to the
//! configured size is enumerated instead of generated Apriori-style. Exact
//! arithmetic only; the descent policy is ignored (enumeration is always
//! complete, matching [`DescentPolicy::AllGroups`]).
//!
//! [`DescentPolicy::AllGroups`]: crate::miner::DescentPolicy::AllGroups

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::dataset::{QualifiedDataset, Transaction};
use crate::fuzzy::SupportValue;
use crate::itemset::Itemset;
use crate::miner::{FrequentTable, MineError, MiningConfig};
use crate::numeric::{ratio, Rational};
use crate::taxonomy::ItemCode;

/// Enumeration guard: levels with more groups than this are refused.
pub const MAX_UNIVERSE: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("UniverseTooLarge: {count} level-{level} groups exceeds the {max} enumeration limit")]
    UniverseTooLarge {
        level: usize,
        count: usize,
        max: usize,
    },
    #[error(transparent)]
    Config(#[from] MineError),
}

/// Frequent tables computed by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    tables: Vec<FrequentTable>,
}

impl OracleResult {
    pub fn tables(&self) -> &[FrequentTable] {
        &self.tables
    }

    pub fn table(&self, level: usize, size: usize) -> Option<&FrequentTable> {
        self.tables
            .iter()
            .find(|t| t.level() == level && t.size() == size)
    }
}

fn prefix_count(transaction: &Transaction, group: &ItemCode) -> usize {
    transaction
        .items()
        .iter()
        .filter(|leaf| leaf.digits().starts_with(group.digits()))
        .count()
}

fn direct_support(dataset: &QualifiedDataset, itemset: &Itemset) -> Rational {
    let mut total = Rational::zero();
    for transaction in dataset.transactions() {
        let mut min_count = usize::MAX;
        for group in itemset.iter() {
            let count = prefix_count(transaction, group);
            if count == 0 {
                min_count = 0;
                break;
            }
            min_count = min_count.min(count);
        }
        if min_count > 0 {
            total += ratio(min_count as i64, transaction.cardinality() as i64);
        }
    }
    total
}

/// Enumerate every level-local itemset of size 1..=max_itemset_size and
/// keep those whose directly-summed support reaches the level's threshold.
pub fn brute_force_mine(
    dataset: &QualifiedDataset,
    config: &MiningConfig,
) -> Result<OracleResult, OracleError> {
    let depth = dataset.taxonomy().depth();
    let max_level = config.validate(depth)?;
    let mut tables = Vec::new();
    for level in 1..=max_level {
        let universe: BTreeSet<ItemCode> = dataset
            .transactions()
            .iter()
            .flat_map(|t| t.items())
            .map(|leaf| leaf.ancestor_at(level).expect("leaves span every level"))
            .collect();
        if universe.len() > MAX_UNIVERSE {
            return Err(OracleError::UniverseTooLarge {
                level,
                count: universe.len(),
                max: MAX_UNIVERSE,
            });
        }
        for size in 1..=config.max_itemset_size {
            let beta = config
                .min_support
                .get(level, size)
                .expect("validated: every mined level has a threshold");
            let mut entries = BTreeMap::new();
            for combo in universe.iter().combinations(size) {
                let itemset =
                    Itemset::new(combo.into_iter().cloned()).expect("uniform level, non-empty");
                let support = direct_support(dataset, &itemset);
                if &support >= beta {
                    entries.insert(itemset, SupportValue::new(support, None));
                }
            }
            tables.push(FrequentTable::new(level, size, entries));
        }
    }
    Ok(OracleResult { tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::qualify;
    use crate::miner::SupportThresholds;
    use crate::taxonomy::Taxonomy;

    #[test]
    fn empty_dataset_yields_empty_tables() {
        let tax = Taxonomy::from_records([("a", "1111")]).unwrap();
        let ds = qualify(Vec::new(), None, &tax).unwrap();
        let config = MiningConfig {
            min_support: SupportThresholds::uniform(ratio(1, 10), 4),
            ..MiningConfig::default()
        };
        let result = brute_force_mine(&ds, &config).unwrap();
        assert!(result.tables().iter().all(FrequentTable::is_empty));
    }

    #[test]
    fn zero_threshold_is_rejected() {
        let tax = Taxonomy::from_records([("a", "1111")]).unwrap();
        let ds = qualify(Vec::new(), None, &tax).unwrap();
        let config = MiningConfig {
            min_support: SupportThresholds::uniform(ratio(0, 1), 4),
            ..MiningConfig::default()
        };
        assert!(matches!(
            brute_force_mine(&ds, &config),
            Err(OracleError::Config(MineError::InvalidThreshold { .. }))
        ));
    }

    #[test]
    fn oversized_universe_is_refused() {
        // 21 distinct level-2 prefixes out of 3 x 7 leaf digit pairs.
        let mut records = Vec::new();
        for a in 1..=3u8 {
            for b in 1..=7u8 {
                let code = format!("{a}{b}11");
                records.push((format!("leaf {code}"), code));
            }
        }
        let tax = Taxonomy::from_records(records).unwrap();
        let items: Vec<String> = tax.leaves().map(|c| c.render()).collect();
        let ds = qualify(
            vec![Transaction::new("T1", items, &tax).unwrap()],
            None,
            &tax,
        )
        .unwrap();
        let config = MiningConfig {
            min_support: SupportThresholds::uniform(ratio(1, 100), 4),
            max_itemset_size: 1,
            ..MiningConfig::default()
        };
        assert!(matches!(
            brute_force_mine(&ds, &config),
            Err(OracleError::UniverseTooLarge { level: 2, .. })
        ));
    }
}
