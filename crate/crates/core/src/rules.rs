//! Association rules and confidence.
//!
//! Every frequent itemset of size >= 2 yields one rule per ordered split
//! into a non-empty antecedent and consequent (2^q - 2 rules). Confidence
//! is support(A u B) / support(A); in compat mode the truncated supports
//! are divided and the quotient is truncated to two decimals again, in
//! exact mode the quotient is an exact rational.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::fuzzy::{self, ArithmeticMode, SupportError, SupportValue};
use crate::itemset::{Itemset, ItemsetError};
use crate::miner::MiningResult;
use crate::numeric::{format_centi, truncate_centi, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("ZeroAntecedentSupport: {0} has support 0")]
    ZeroAntecedentSupport(String),
    #[error("OverlappingItemsets: antecedent and consequent must be disjoint")]
    OverlappingItemsets,
    #[error(transparent)]
    Itemset(#[from] ItemsetError),
    #[error(transparent)]
    Support(#[from] SupportError),
}

/// One mined rule: antecedent implies consequent, at a single taxonomy
/// level, scored by the union's support and by confidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationRule {
    antecedent: Itemset,
    consequent: Itemset,
    level: usize,
    support: SupportValue,
    confidence: Rational,
}

impl AssociationRule {
    pub fn antecedent(&self) -> &Itemset {
        &self.antecedent
    }

    pub fn consequent(&self) -> &Itemset {
        &self.consequent
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Support of antecedent united with consequent.
    pub fn support(&self) -> &SupportValue {
        &self.support
    }

    pub fn confidence(&self) -> &Rational {
        &self.confidence
    }

    /// Confidence rendered per the rule's arithmetic (two decimals when the
    /// quotient was truncated, `p/q` otherwise). The mode is implied by the
    /// support value.
    pub fn confidence_display(&self) -> String {
        match self.support.compat() {
            Some(_) => format_centi(&self.confidence),
            None => self.confidence.to_string(),
        }
    }
}

impl fmt::Display for AssociationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.antecedent, self.consequent)
    }
}

/// Divide two supports under the given mode.
pub fn confidence_from_supports(
    union: &SupportValue,
    antecedent: &SupportValue,
    mode: ArithmeticMode,
) -> Result<Rational, RuleError> {
    let (numer, denom) = match mode {
        ArithmeticMode::Exact => (union.exact(), antecedent.exact()),
        ArithmeticMode::Compat => (
            union.compat().unwrap_or_else(|| union.exact()),
            antecedent.compat().unwrap_or_else(|| antecedent.exact()),
        ),
    };
    if denom.is_zero() {
        return Err(RuleError::ZeroAntecedentSupport("antecedent".into()));
    }
    let quotient = numer / denom;
    Ok(match mode {
        ArithmeticMode::Exact => quotient,
        ArithmeticMode::Compat => truncate_centi(&quotient),
    })
}

fn support_lookup(result: &MiningResult, itemset: &Itemset) -> Result<SupportValue, RuleError> {
    if let Some(sup) = result.support_of(itemset) {
        return Ok(sup.clone());
    }
    // Pruned or never-generated itemsets are recomputed for ad-hoc queries.
    Ok(fuzzy::support_of(result.dataset(), itemset, result.mode())?)
}

/// Confidence of `antecedent => consequent` against a mining run, looking
/// supports up in the run's tables and recomputing when absent.
pub fn confidence(
    result: &MiningResult,
    antecedent: &Itemset,
    consequent: &Itemset,
) -> Result<Rational, RuleError> {
    if !antecedent.is_disjoint(consequent) {
        return Err(RuleError::OverlappingItemsets);
    }
    let union = antecedent.union(consequent)?;
    let union_support = support_lookup(result, &union)?;
    let antecedent_support = support_lookup(result, antecedent)?;
    confidence_from_supports(&union_support, &antecedent_support, result.mode()).map_err(
        |e| match e {
            RuleError::ZeroAntecedentSupport(_) => {
                RuleError::ZeroAntecedentSupport(antecedent.to_string())
            }
            other => other,
        },
    )
}

/// Every split of every frequent itemset of size >= 2, optionally filtered
/// by a minimum confidence, ordered by (level, itemset, antecedent).
pub fn generate_rules(
    result: &MiningResult,
    min_confidence: Option<&Rational>,
) -> Vec<AssociationRule> {
    let mode = result.mode();
    let mut keyed: Vec<((usize, Itemset, Itemset), AssociationRule)> = Vec::new();
    for table in result.tables().iter().filter(|t| t.size() >= 2) {
        for (itemset, support) in table.entries() {
            let codes = itemset.codes();
            for mask in 1..((1u32 << codes.len()) - 1) {
                let mut antecedent = Vec::new();
                let mut consequent = Vec::new();
                for (i, code) in codes.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        antecedent.push(code.clone());
                    } else {
                        consequent.push(code.clone());
                    }
                }
                let antecedent = Itemset::new(antecedent).expect("non-empty by mask");
                let consequent = Itemset::new(consequent).expect("non-empty by mask");
                // Downward closure keeps every subset in its table, so the
                // lookup cannot miss and the denominator is at least beta.
                let antecedent_support = support_lookup(result, &antecedent)
                    .expect("antecedent of a frequent itemset is frequent");
                let confidence = match confidence_from_supports(support, &antecedent_support, mode)
                {
                    Ok(c) => c,
                    Err(_) => continue,
                };
                if let Some(min) = min_confidence {
                    if &confidence < min {
                        continue;
                    }
                }
                keyed.push((
                    (table.level(), itemset.clone(), antecedent.clone()),
                    AssociationRule {
                        antecedent,
                        consequent,
                        level: table.level(),
                        support: support.clone(),
                        confidence,
                    },
                ));
            }
        }
    }
    keyed.sort_by(|(a, _), (b, _)| a.cmp(b));
    keyed.into_iter().map(|(_, rule)| rule).collect()
}
