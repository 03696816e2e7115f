//! Itemsets: sorted sets of codes drawn from a single taxonomy level.

use std::fmt;

use thiserror::Error;

use crate::taxonomy::ItemCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ItemsetError {
    #[error("EmptyItemset: an itemset needs at least one code")]
    EmptyItemset,
    #[error("MixedLevels: codes at levels {0} and {1} cannot share an itemset")]
    MixedLevels(usize, usize),
}

/// A non-empty, duplicate-free, sorted set of same-level codes.
///
/// Level uniformity is enforced at construction, so every consumer can rely
/// on `level()` without re-checking. Ordering is lexicographic over the
/// sorted code sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset {
    codes: Vec<ItemCode>,
}

impl Itemset {
    pub fn new(codes: impl IntoIterator<Item = ItemCode>) -> Result<Self, ItemsetError> {
        let mut codes: Vec<ItemCode> = codes.into_iter().collect();
        codes.sort();
        codes.dedup();
        let first = codes.first().ok_or(ItemsetError::EmptyItemset)?;
        let level = first.level();
        if let Some(other) = codes.iter().find(|c| c.level() != level) {
            return Err(ItemsetError::MixedLevels(level, other.level()));
        }
        Ok(Itemset { codes })
    }

    pub fn singleton(code: ItemCode) -> Self {
        Itemset { codes: vec![code] }
    }

    pub fn level(&self) -> usize {
        self.codes[0].level()
    }

    pub fn size(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[ItemCode] {
        &self.codes
    }

    pub fn iter(&self) -> impl Iterator<Item = &ItemCode> {
        self.codes.iter()
    }

    pub fn contains(&self, code: &ItemCode) -> bool {
        self.codes.binary_search(code).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        self.codes.iter().all(|c| other.contains(c))
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        !self.codes.iter().any(|c| other.contains(c))
    }

    pub fn union(&self, other: &Itemset) -> Result<Itemset, ItemsetError> {
        Itemset::new(self.codes.iter().chain(other.iter()).cloned())
    }

    /// All subsets obtained by dropping exactly one code; used by the
    /// candidate prune. Meaningful for sizes >= 2.
    pub fn subsets_dropping_one(&self) -> impl Iterator<Item = Itemset> + '_ {
        (0..self.codes.len()).map(move |skip| {
            let codes = self
                .codes
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, c)| c.clone())
                .collect();
            Itemset { codes }
        })
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, code) in self.codes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{code}")?;
        }
        write!(f, "}}")
    }
}
