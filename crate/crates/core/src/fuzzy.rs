//! Fuzzy itemset membership and support.
//!
//! A group's membership in a transaction is its occurrence count divided by
//! the transaction cardinality; an itemset's membership is the minimum over
//! its groups (zero if any group is absent). Support sums memberships over
//! the qualified set. Two arithmetic modes exist:
//!
//! * [`ArithmeticMode::Exact`] keeps arbitrary-precision rationals
//!   end-to-end, so threshold comparisons and the level-wise normalization
//!   identity are exact.
//! * [`ArithmeticMode::Compat`] truncates every per-transaction membership
//!   toward zero at two decimals before summation, for comparing against
//!   tabulations produced with truncated decimal arithmetic.
//!
//! Both modes are order-independent: rational addition commutes, and compat
//! truncation happens per addend before the sum.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::dataset::{group_at_level, DatasetError, GroupCounts, GroupRow, QualifiedDataset};
use crate::itemset::Itemset;
use crate::numeric::{format_centi, ratio, truncate_centi, Rational};
use crate::taxonomy::ItemCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupportError {
    #[error("TransactionNotInDataset: `{0}`")]
    TransactionNotInDataset(String),
    #[error("LevelMismatch: itemset at level {itemset}, group counts at level {counts}")]
    LevelMismatch { itemset: usize, counts: usize },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

/// Which arithmetic the kernel runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArithmeticMode {
    #[default]
    Exact,
    Compat,
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticMode::Exact => f.write_str("exact"),
            ArithmeticMode::Compat => f.write_str("compat"),
        }
    }
}

/// An aggregated support: the exact rational sum, plus the truncated sum
/// when computed in compat mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportValue {
    exact: Rational,
    compat: Option<Rational>,
}

impl SupportValue {
    pub fn new(exact: Rational, compat: Option<Rational>) -> Self {
        SupportValue { exact, compat }
    }

    pub fn exact(&self) -> &Rational {
        &self.exact
    }

    pub fn compat(&self) -> Option<&Rational> {
        self.compat.as_ref()
    }

    /// The value threshold comparisons use: the truncated sum when present,
    /// the exact sum otherwise.
    pub fn effective(&self) -> &Rational {
        self.compat.as_ref().unwrap_or(&self.exact)
    }

    /// Canonical rendering: two-digit decimal in compat, `p/q` in exact.
    pub fn display(&self) -> String {
        match &self.compat {
            Some(c) => format_centi(c),
            None => self.exact.to_string(),
        }
    }
}

/// Per-transaction memberships of one itemset; zero memberships are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Membership {
    values: BTreeMap<String, Rational>,
}

impl Membership {
    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }

    pub fn get(&self, id: &str) -> Option<&Rational> {
        self.values.get(id)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn row_for<'a>(counts: &'a GroupCounts, id: &str) -> Result<&'a GroupRow, SupportError> {
    counts
        .row(id)
        .ok_or_else(|| SupportError::TransactionNotInDataset(id.to_string()))
}

fn check_level(counts: &GroupCounts, level: usize) -> Result<(), SupportError> {
    if level != counts.level() {
        return Err(SupportError::LevelMismatch {
            itemset: level,
            counts: counts.level(),
        });
    }
    Ok(())
}

/// Membership of a single group in one transaction: occurrences / cardinality.
pub fn item_membership(
    counts: &GroupCounts,
    id: &str,
    group: &ItemCode,
) -> Result<Rational, SupportError> {
    check_level(counts, group.level())?;
    let row = row_for(counts, id)?;
    Ok(ratio(row.count(group) as i64, row.cardinality() as i64))
}

fn row_membership(row: &GroupRow, itemset: &Itemset) -> Rational {
    // Denominators agree within a row, so the infimum is the minimum count
    // over the cardinality.
    let mut min_count = usize::MAX;
    for code in itemset.iter() {
        let count = row.count(code);
        if count == 0 {
            return Rational::zero();
        }
        min_count = min_count.min(count);
    }
    ratio(min_count as i64, row.cardinality() as i64)
}

/// Membership of an itemset in one transaction: the minimum over its groups.
pub fn itemset_membership(
    counts: &GroupCounts,
    id: &str,
    itemset: &Itemset,
) -> Result<Rational, SupportError> {
    check_level(counts, itemset.level())?;
    let row = row_for(counts, id)?;
    Ok(row_membership(row, itemset))
}

/// The nonzero per-transaction memberships of an itemset.
pub fn itemset_memberships(
    counts: &GroupCounts,
    itemset: &Itemset,
) -> Result<Membership, SupportError> {
    check_level(counts, itemset.level())?;
    let mut values = BTreeMap::new();
    for row in counts.rows() {
        let m = row_membership(row, itemset);
        if !m.is_zero() {
            values.insert(row.id().to_string(), m);
        }
    }
    Ok(Membership { values })
}

/// Aggregate support over all transactions behind `counts`.
pub fn support(
    counts: &GroupCounts,
    itemset: &Itemset,
    mode: ArithmeticMode,
) -> Result<SupportValue, SupportError> {
    check_level(counts, itemset.level())?;
    let mut exact = Rational::zero();
    let mut compat = match mode {
        ArithmeticMode::Exact => None,
        ArithmeticMode::Compat => Some(Rational::zero()),
    };
    for row in counts.rows() {
        let m = row_membership(row, itemset);
        if m.is_zero() {
            continue;
        }
        if let Some(c) = compat.as_mut() {
            *c += truncate_centi(&m);
        }
        exact += m;
    }
    Ok(SupportValue { exact, compat })
}

/// Convenience wrapper that derives the grouping level from the itemset.
pub fn support_of(
    dataset: &QualifiedDataset,
    itemset: &Itemset,
    mode: ArithmeticMode,
) -> Result<SupportValue, SupportError> {
    let counts = group_at_level(dataset, itemset.level())?;
    support(&counts, itemset, mode)
}

/// Sum of all level-`level` singleton supports. In exact mode this equals
/// |M| whenever every leaf has an ancestor at that level (always true for
/// positional codes); in compat mode it is the truncated-sum analogue.
pub fn normalization_check(
    dataset: &QualifiedDataset,
    level: usize,
    mode: ArithmeticMode,
) -> Result<Rational, SupportError> {
    let counts = group_at_level(dataset, level)?;
    let mut total = Rational::zero();
    for row in counts.rows() {
        for &count in row.counts().values() {
            let m = ratio(count as i64, row.cardinality() as i64);
            total += match mode {
                ArithmeticMode::Exact => m,
                ArithmeticMode::Compat => truncate_centi(&m),
            };
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{qualify, Transaction};
    use crate::taxonomy::Taxonomy;

    fn taxonomy() -> Taxonomy {
        Taxonomy::from_records([
            ("a1", "1111"),
            ("a2", "1122"),
            ("b1", "2111"),
            ("c1", "3111"),
        ])
        .unwrap()
    }

    fn dataset() -> QualifiedDataset {
        let tax = taxonomy();
        let ts = vec![
            Transaction::new("T1", ["1111", "1111", "2111"], &tax).unwrap(),
            Transaction::new("T2", ["1122", "3111", "3111"], &tax).unwrap(),
        ];
        qualify(ts, None, &tax).unwrap()
    }

    fn iset(texts: &[&str]) -> Itemset {
        Itemset::new(texts.iter().map(|t| ItemCode::parse(t).unwrap())).unwrap()
    }

    fn code(text: &str) -> ItemCode {
        ItemCode::parse(text).unwrap()
    }

    #[test]
    fn item_membership_is_count_over_cardinality() {
        let ds = dataset();
        let counts = group_at_level(&ds, 1).unwrap();
        assert_eq!(
            item_membership(&counts, "T1", &code("1***")).unwrap(),
            ratio(2, 3)
        );
        assert_eq!(
            item_membership(&counts, "T1", &code("3***")).unwrap(),
            ratio(0, 1)
        );
        assert!(matches!(
            item_membership(&counts, "T9", &code("1***")),
            Err(SupportError::TransactionNotInDataset(_))
        ));
        assert!(matches!(
            item_membership(&counts, "T1", &code("11**")),
            Err(SupportError::LevelMismatch { .. })
        ));
    }

    #[test]
    fn itemset_membership_takes_the_minimum() {
        let ds = dataset();
        let counts = group_at_level(&ds, 1).unwrap();
        assert_eq!(
            itemset_membership(&counts, "T1", &iset(&["1***", "2***"])).unwrap(),
            ratio(1, 3)
        );
        // Zero as soon as any member is absent.
        assert_eq!(
            itemset_membership(&counts, "T1", &iset(&["1***", "3***"])).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn support_sums_and_compat_truncates() {
        let ds = dataset();
        let counts = group_at_level(&ds, 1).unwrap();
        let sup = support(&counts, &iset(&["1***"]), ArithmeticMode::Compat).unwrap();
        // 2/3 + 1/3 exactly 1; truncated 0.66 + 0.33 = 0.99.
        assert_eq!(sup.exact(), &ratio(1, 1));
        assert_eq!(sup.compat(), Some(&ratio(99, 100)));
        assert_eq!(sup.display(), "0.99");

        let exact = support(&counts, &iset(&["1***"]), ArithmeticMode::Exact).unwrap();
        assert_eq!(exact.compat(), None);
        assert_eq!(exact.display(), "1");
        assert_eq!(exact.effective(), &ratio(1, 1));
    }

    #[test]
    fn membership_map_skips_zeroes() {
        let ds = dataset();
        let counts = group_at_level(&ds, 1).unwrap();
        let m = itemset_memberships(&counts, &iset(&["3***"])).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get("T2"), Some(&ratio(2, 3)));
        assert_eq!(m.get("T1"), None);
    }

    #[test]
    fn normalization_is_exact_cardinality() {
        let ds = dataset();
        for level in 1..=4 {
            assert_eq!(
                normalization_check(&ds, level, ArithmeticMode::Exact).unwrap(),
                ratio(2, 1)
            );
        }
        let empty = qualify(Vec::new(), None, &taxonomy()).unwrap();
        assert_eq!(
            normalization_check(&empty, 1, ArithmeticMode::Exact).unwrap(),
            Rational::zero()
        );
    }
}
