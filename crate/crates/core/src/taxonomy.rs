//! Positional taxonomy codes and the item-name dictionary.
//!
//! A code is a fixed-width string of branch digits padded with `*`: in a
//! depth-4 hierarchy `1***` is a top-level category, `11**` and `111*` are
//! nested subcategories, and `1112` is a leaf (a concrete item). The first
//! `k` characters of a code identify its level-`k` group, so grouping and
//! ancestor queries are prefix operations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

pub const WILDCARD: char = '*';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaxonomyError {
    #[error("MalformedCode: `{code}`: {reason}")]
    MalformedCode { code: String, reason: String },
    #[error("LevelOutOfRange: level {level} is not in 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("DuplicateName: `{0}` appears more than once")]
    DuplicateName(String),
    #[error("DuplicateCode: `{0}` is mapped by more than one name")]
    DuplicateCode(String),
    #[error("InconsistentDepth: code `{code}` has length {found}, expected {expected}")]
    InconsistentDepth {
        code: String,
        found: usize,
        expected: usize,
    },
    #[error("EmptyTaxonomy: no entries")]
    EmptyTaxonomy,
    #[error("Io: {0}")]
    Io(String),
    #[error("Csv: {0}")]
    Csv(String),
    #[error("Json: {0}")]
    Json(String),
    #[error("MissingColumn: expected a `{0}` column")]
    MissingColumn(&'static str),
}

impl TaxonomyError {
    fn malformed(code: &str, reason: impl Into<String>) -> Self {
        TaxonomyError::MalformedCode {
            code: code.to_string(),
            reason: reason.into(),
        }
    }
}

/// A taxonomy position: the specified digit prefix plus the rendered depth.
///
/// `level()` (the number of specified digits) tells how deep the node sits;
/// a code whose level equals its depth is a leaf. Ordering is lexicographic
/// on the digit prefix, which matches ordering of the rendered strings
/// within one taxonomy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemCode {
    digits: Vec<u8>,
    depth: usize,
}

impl ItemCode {
    /// Parse a fixed-width code string; the depth is the string length.
    pub fn parse(text: &str) -> Result<Self, TaxonomyError> {
        let mut digits = Vec::new();
        let mut in_padding = false;
        let mut depth = 0usize;
        for ch in text.chars() {
            depth += 1;
            match ch {
                '1'..='9' if in_padding => {
                    return Err(TaxonomyError::malformed(text, "digit after wildcard"));
                }
                '1'..='9' => digits.push(ch as u8 - b'0'),
                WILDCARD => in_padding = true,
                '0' => {
                    return Err(TaxonomyError::malformed(text, "branch digits are 1-9"));
                }
                other => {
                    return Err(TaxonomyError::malformed(
                        text,
                        format!("invalid character `{other}`"),
                    ));
                }
            }
        }
        if digits.is_empty() {
            return Err(TaxonomyError::malformed(text, "no branch digits"));
        }
        Ok(ItemCode { digits, depth })
    }

    /// Number of specified digits (the code's level in the hierarchy).
    pub fn level(&self) -> usize {
        self.digits.len()
    }

    /// Rendered length, i.e. the taxonomy depth the code belongs to.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_leaf(&self) -> bool {
        self.level() == self.depth
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// The ancestor holding this code's first `level` digits.
    pub fn ancestor_at(&self, level: usize) -> Result<ItemCode, TaxonomyError> {
        if level < 1 || level > self.level() {
            return Err(TaxonomyError::LevelOutOfRange {
                level,
                max: self.level(),
            });
        }
        Ok(ItemCode {
            digits: self.digits[..level].to_vec(),
            depth: self.depth,
        })
    }

    /// The code string: digits padded with `*` up to the depth.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.depth);
        for d in &self.digits {
            out.push((b'0' + d) as char);
        }
        for _ in self.level()..self.depth {
            out.push(WILDCARD);
        }
        out
    }
}

impl fmt::Display for ItemCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for ItemCode {
    type Err = TaxonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ItemCode::parse(s)
    }
}

/// The validated item dictionary: a bidirectional name/code map of uniform
/// depth. Immutable after construction, so shared references are safe to
/// read concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    depth: usize,
    by_name: BTreeMap<String, ItemCode>,
    by_code: BTreeMap<ItemCode, String>,
    leaves: BTreeSet<ItemCode>,
}

impl Taxonomy {
    /// Build from `(name, code)` records, validating uniqueness and depth.
    pub fn from_records<I, N, C>(records: I) -> Result<Self, TaxonomyError>
    where
        I: IntoIterator<Item = (N, C)>,
        N: Into<String>,
        C: AsRef<str>,
    {
        let mut depth: Option<usize> = None;
        let mut by_name = BTreeMap::new();
        let mut by_code = BTreeMap::new();
        let mut leaves = BTreeSet::new();
        for (name, code_text) in records {
            let name = name.into();
            let code_text = code_text.as_ref();
            let code = ItemCode::parse(code_text)?;
            match depth {
                None => depth = Some(code.depth()),
                Some(expected) if expected != code.depth() => {
                    return Err(TaxonomyError::InconsistentDepth {
                        code: code_text.to_string(),
                        found: code.depth(),
                        expected,
                    });
                }
                Some(_) => {}
            }
            if by_name.contains_key(&name) {
                return Err(TaxonomyError::DuplicateName(name));
            }
            if by_code.contains_key(&code) {
                return Err(TaxonomyError::DuplicateCode(code.render()));
            }
            if code.is_leaf() {
                leaves.insert(code.clone());
            }
            by_code.insert(code.clone(), name.clone());
            by_name.insert(name, code);
        }
        let depth = depth.ok_or(TaxonomyError::EmptyTaxonomy)?;
        Ok(Taxonomy {
            depth,
            by_name,
            by_code,
            leaves,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.by_name.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    pub fn contains(&self, code: &ItemCode) -> bool {
        self.by_code.contains_key(code)
    }

    /// True when `code` is a full-depth entry of the dictionary.
    pub fn is_leaf(&self, code: &ItemCode) -> bool {
        self.leaves.contains(code)
    }

    pub fn code_of(&self, name: &str) -> Option<&ItemCode> {
        self.by_name.get(name)
    }

    pub fn name_of(&self, code: &ItemCode) -> Option<&str> {
        self.by_code.get(code).map(String::as_str)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &ItemCode> {
        self.leaves.iter()
    }

    /// Parse a code string, enforcing this taxonomy's depth.
    pub fn parse_code(&self, text: &str) -> Result<ItemCode, TaxonomyError> {
        let len = text.chars().count();
        if len != self.depth {
            return Err(TaxonomyError::malformed(
                text,
                format!("length {len}, expected {}", self.depth),
            ));
        }
        ItemCode::parse(text)
    }
}

/// Load a taxonomy file: CSV with a `name,code` header, or (for `.json`
/// paths) a JSON object mapping names to codes.
pub fn load_taxonomy(path: impl AsRef<Path>) -> Result<Taxonomy, TaxonomyError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| TaxonomyError::Io(e.to_string()))?;
    if path.extension().is_some_and(|ext| ext == "json") {
        let entries: BTreeMap<String, String> =
            serde_json::from_str(&text).map_err(|e| TaxonomyError::Json(e.to_string()))?;
        Taxonomy::from_records(entries)
    } else {
        taxonomy_from_csv(&text)
    }
}

fn taxonomy_from_csv(text: &str) -> Result<Taxonomy, TaxonomyError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| TaxonomyError::Csv(e.to_string()))?
        .clone();
    let name_idx = headers
        .iter()
        .position(|h| h == "name")
        .ok_or(TaxonomyError::MissingColumn("name"))?;
    let code_idx = headers
        .iter()
        .position(|h| h == "code")
        .ok_or(TaxonomyError::MissingColumn("code"))?;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| TaxonomyError::Csv(e.to_string()))?;
        let name = row.get(name_idx).unwrap_or("").to_string();
        let code = row.get(code_idx).unwrap_or("").to_string();
        records.push((name, code));
    }
    Taxonomy::from_records(records)
}
