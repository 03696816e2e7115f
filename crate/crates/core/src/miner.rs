//! The level-wise mining loop: per-level minimum supports, candidate
//! generation via the sorted-prefix join with a full subset prune, and
//! frequent-table construction, descending one taxonomy level at a time.
//!
//! Anti-monotonicity holds in both arithmetic modes (per-transaction
//! truncation is monotone), so the subset prune never discards a frequent
//! itemset. Everything here is sequential and deterministic: identical
//! inputs produce identical [`MiningResult`]s, ordering included.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::dataset::{group_at_level, DatasetError, GroupCounts, QualifiedDataset};
use crate::fuzzy::{self, ArithmeticMode, SupportError, SupportValue};
use crate::itemset::Itemset;
use crate::numeric::Rational;
use crate::taxonomy::ItemCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MineError {
    #[error("InvalidThreshold: minimum support must be positive ({at})")]
    InvalidThreshold { at: String },
    #[error("MissingThreshold: no minimum support configured for level {0}")]
    MissingThreshold(usize),
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("LevelOutOfRange: level {level} is not in 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

/// Which level-`k` groups enter the mining universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DescentPolicy {
    /// Every group present in the qualified set. Mathematically complete;
    /// equals exhaustive enumeration.
    #[default]
    AllGroups,
    /// Only groups whose level-(k-1) ancestor was a frequent 1-itemset;
    /// descent stops once a level has no frequent singletons.
    FrequentDescendantsOnly,
}

impl fmt::Display for DescentPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentPolicy::AllGroups => f.write_str("all"),
            DescentPolicy::FrequentDescendantsOnly => f.write_str("frequent-descendants"),
        }
    }
}

/// Per-level minimum supports, with optional per-(level, size) overrides.
/// A size without an override inherits its level's base threshold.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportThresholds {
    per_level: BTreeMap<usize, Rational>,
    per_level_size: BTreeMap<(usize, usize), Rational>,
}

impl SupportThresholds {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_level(&mut self, level: usize, beta: Rational) -> &mut Self {
        self.per_level.insert(level, beta);
        self
    }

    pub fn set_level_size(&mut self, level: usize, size: usize, beta: Rational) -> &mut Self {
        self.per_level_size.insert((level, size), beta);
        self
    }

    pub fn with_level(mut self, level: usize, beta: Rational) -> Self {
        self.set_level(level, beta);
        self
    }

    pub fn with_level_size(mut self, level: usize, size: usize, beta: Rational) -> Self {
        self.set_level_size(level, size, beta);
        self
    }

    /// The same base threshold for every level in `1..=max_level`.
    pub fn uniform(beta: Rational, max_level: usize) -> Self {
        let mut t = Self::new();
        for level in 1..=max_level {
            t.set_level(level, beta.clone());
        }
        t
    }

    pub fn get(&self, level: usize, size: usize) -> Option<&Rational> {
        self.per_level_size
            .get(&(level, size))
            .or_else(|| self.per_level.get(&level))
    }

    pub fn base_levels(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.per_level.iter().map(|(k, v)| (*k, v))
    }

    pub fn size_overrides(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.per_level_size.iter().map(|((k, q), v)| (*k, *q, v))
    }
}

/// Everything a mining run needs besides the dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningConfig {
    /// Maximum item threshold the dataset was qualified with (echoed in
    /// results; `None` means unlimited).
    pub chi: Option<usize>,
    pub min_support: SupportThresholds,
    /// Largest itemset size to mine per level.
    pub max_itemset_size: usize,
    /// Deepest level to mine; `None` means the taxonomy depth.
    pub max_level: Option<usize>,
    pub descent: DescentPolicy,
    pub mode: ArithmeticMode,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            chi: None,
            min_support: SupportThresholds::default(),
            max_itemset_size: 4,
            max_level: None,
            descent: DescentPolicy::default(),
            mode: ArithmeticMode::default(),
        }
    }
}

impl MiningConfig {
    /// Validate against a taxonomy depth; returns the effective max level.
    pub fn validate(&self, depth: usize) -> Result<usize, MineError> {
        if self.max_itemset_size < 1 {
            return Err(MineError::InvalidConfig(
                "max itemset size must be at least 1".into(),
            ));
        }
        let max_level = self.max_level.unwrap_or(depth);
        if max_level < 1 || max_level > depth {
            return Err(MineError::LevelOutOfRange {
                level: max_level,
                max: depth,
            });
        }
        for (level, beta) in self.min_support.base_levels() {
            if beta <= &Rational::zero() {
                return Err(MineError::InvalidThreshold {
                    at: format!("level {level}"),
                });
            }
        }
        for (level, size, beta) in self.min_support.size_overrides() {
            if beta <= &Rational::zero() {
                return Err(MineError::InvalidThreshold {
                    at: format!("level {level}, size {size}"),
                });
            }
        }
        for level in 1..=max_level {
            if self.min_support.get(level, 1).is_none() {
                return Err(MineError::MissingThreshold(level));
            }
        }
        Ok(max_level)
    }

    fn threshold(&self, level: usize, size: usize) -> &Rational {
        self.min_support
            .get(level, size)
            .expect("validated: every mined level has a threshold")
    }
}

/// The frequent `size`-itemsets at one level, with their supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentTable {
    level: usize,
    size: usize,
    entries: BTreeMap<Itemset, SupportValue>,
}

impl FrequentTable {
    pub(crate) fn new(level: usize, size: usize, entries: BTreeMap<Itemset, SupportValue>) -> Self {
        FrequentTable {
            level,
            size,
            entries,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &BTreeMap<Itemset, SupportValue> {
        &self.entries
    }

    pub fn get(&self, itemset: &Itemset) -> Option<&SupportValue> {
        self.entries.get(itemset)
    }

    pub fn contains(&self, itemset: &Itemset) -> bool {
        self.entries.contains_key(itemset)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Union of all codes appearing in entries.
    pub fn item_codes(&self) -> BTreeSet<ItemCode> {
        self.entries
            .keys()
            .flat_map(|s| s.codes().iter().cloned())
            .collect()
    }
}

/// A complete, deterministic mining run: every computed frequent table in
/// (level, size) order, plus the inputs that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningResult {
    config: MiningConfig,
    dataset: QualifiedDataset,
    tables: Vec<FrequentTable>,
}

impl MiningResult {
    pub fn config(&self) -> &MiningConfig {
        &self.config
    }

    pub fn dataset(&self) -> &QualifiedDataset {
        &self.dataset
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.config.mode
    }

    pub fn tables(&self) -> &[FrequentTable] {
        &self.tables
    }

    pub fn table(&self, level: usize, size: usize) -> Option<&FrequentTable> {
        self.tables
            .iter()
            .find(|t| t.level() == level && t.size() == size)
    }

    /// Support of a frequent itemset, if it was retained.
    pub fn support_of(&self, itemset: &Itemset) -> Option<&SupportValue> {
        self.table(itemset.level(), itemset.size())
            .and_then(|t| t.get(itemset))
    }
}

fn singletons_from_counts(
    counts: &GroupCounts,
    beta: &Rational,
    mode: ArithmeticMode,
    allowed_groups: Option<&BTreeSet<ItemCode>>,
) -> Result<FrequentTable, MineError> {
    let mut entries = BTreeMap::new();
    for group in counts.universe() {
        if let Some(allowed) = allowed_groups {
            if !allowed.contains(&group) {
                continue;
            }
        }
        let itemset = Itemset::singleton(group);
        let sup = fuzzy::support(counts, &itemset, mode)?;
        if sup.effective() >= beta {
            entries.insert(itemset, sup);
        }
    }
    Ok(FrequentTable::new(counts.level(), 1, entries))
}

/// All level-`level` groups (optionally restricted) whose support reaches
/// `beta`.
pub fn frequent_singletons(
    dataset: &QualifiedDataset,
    level: usize,
    beta: &Rational,
    mode: ArithmeticMode,
    allowed_groups: Option<&BTreeSet<ItemCode>>,
) -> Result<FrequentTable, MineError> {
    if beta <= &Rational::zero() {
        return Err(MineError::InvalidThreshold {
            at: format!("level {level}"),
        });
    }
    let counts = group_at_level(dataset, level)?;
    singletons_from_counts(&counts, beta, mode, allowed_groups)
}

/// Candidate (size+1)-itemsets from a frequent table: join entries sharing
/// all but their last code, then keep candidates whose every one-smaller
/// subset is frequent. Output is lexicographic by rendered codes.
pub fn generate_candidates(prev: &FrequentTable) -> Vec<Itemset> {
    let entries: Vec<&Itemset> = prev.entries().keys().collect();
    let shared = prev.size() - 1;
    let mut candidates = Vec::new();
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let a = entries[i].codes();
            let b = entries[j].codes();
            if a[..shared] != b[..shared] {
                // Entries are sorted, so later `j` diverge as well.
                break;
            }
            let mut codes = a.to_vec();
            codes.push(b[shared].clone());
            let candidate = Itemset::new(codes).expect("joined entries share one level");
            if candidate
                .subsets_dropping_one()
                .all(|subset| prev.contains(&subset))
            {
                candidates.push(candidate);
            }
        }
    }
    candidates
}

/// Run the full top-down loop: for each level up to the configured maximum,
/// find frequent singletons over the level's universe (per the descent
/// policy), then grow itemsets size by size until no candidates survive.
pub fn mine(dataset: &QualifiedDataset, config: &MiningConfig) -> Result<MiningResult, MineError> {
    let depth = dataset.taxonomy().depth();
    let max_level = config.validate(depth)?;
    let mut tables: Vec<FrequentTable> = Vec::new();
    let mut parent_codes: BTreeSet<ItemCode> = BTreeSet::new();
    for level in 1..=max_level {
        let counts = group_at_level(dataset, level)?;
        let allowed = match config.descent {
            DescentPolicy::AllGroups => None,
            DescentPolicy::FrequentDescendantsOnly if level == 1 => None,
            DescentPolicy::FrequentDescendantsOnly => {
                if parent_codes.is_empty() {
                    // No frequent ancestors left to expand.
                    break;
                }
                let descendants: BTreeSet<ItemCode> = counts
                    .universe()
                    .into_iter()
                    .filter(|g| {
                        let parent = g.ancestor_at(level - 1).expect("level >= 2");
                        parent_codes.contains(&parent)
                    })
                    .collect();
                Some(descendants)
            }
        };
        let singles = singletons_from_counts(
            &counts,
            config.threshold(level, 1),
            config.mode,
            allowed.as_ref(),
        )?;
        parent_codes = singles
            .entries()
            .keys()
            .map(|s| s.codes()[0].clone())
            .collect();
        let mut level_tables = vec![singles];
        for size in 2..=config.max_itemset_size {
            let candidates = generate_candidates(level_tables.last().expect("size-1 pushed"));
            if candidates.is_empty() {
                break;
            }
            let beta = config.threshold(level, size);
            let mut entries = BTreeMap::new();
            for candidate in candidates {
                let sup = fuzzy::support(&counts, &candidate, config.mode)?;
                if sup.effective() >= beta {
                    entries.insert(candidate, sup);
                }
            }
            level_tables.push(FrequentTable::new(level, size, entries));
        }
        tables.append(&mut level_tables);
    }
    Ok(MiningResult {
        config: config.clone(),
        dataset: dataset.clone(),
        tables,
    })
}
