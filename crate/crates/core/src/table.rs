//! Memo table for sequence values, with cross-method consistency checks on
//! every insert.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, BigNat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    /// Barred preferential arrangements, `r(m, l)`.
    R,
    /// Special barred preferential arrangements, `s(m, l)`.
    S,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::R => "r",
            SequenceKind::S => "s",
        })
    }
}

impl std::str::FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(SequenceKind::R),
            "s" => Ok(SequenceKind::S),
            other => Err(Error::InvalidArgument(format!("unknown sequence kind {other:?}"))),
        }
    }
}

/// Formulas that can fill a table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Recurrence,
    StirlingFirst,
    Blocks,
    Egf,
    FromS,
    InclusionExclusion,
    FirstBlocks,
    Enumeration,
    Cache,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::StirlingFirst => "stirling-first",
            Method::Blocks => "blocks",
            Method::Egf => "egf",
            Method::FromS => "from-s",
            Method::InclusionExclusion => "inclusion-exclusion",
            Method::FirstBlocks => "first-blocks",
            Method::Enumeration => "enumeration",
            Method::Cache => "cache",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        [
            Method::Recurrence,
            Method::StirlingFirst,
            Method::Blocks,
            Method::Egf,
            Method::FromS,
            Method::InclusionExclusion,
            Method::FirstBlocks,
            Method::Enumeration,
            Method::Cache,
        ]
        .into_iter()
        .find(|m| m.name() == name)
    }

    /// Exact-core formulas applicable to a sequence kind, in report order.
    pub fn exact_methods(kind: SequenceKind) -> &'static [Method] {
        match kind {
            SequenceKind::R => &[Method::Recurrence, Method::StirlingFirst, Method::Blocks],
            SequenceKind::S => &[Method::Blocks, Method::InclusionExclusion, Method::FirstBlocks],
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluate `kind(m, l)` with one exact-core formula.
pub fn evaluate(kind: SequenceKind, method: Method, m: usize, l: usize) -> Result<BigNat> {
    use Method::*;
    match (kind, method) {
        (SequenceKind::R, Recurrence) => exact::r_via_recurrence(m, l),
        (SequenceKind::R, StirlingFirst) => exact::r_via_stirling_first(m, l),
        (SequenceKind::R, Blocks) => Ok(exact::r_via_blocks(m, l)),
        (SequenceKind::R, FromS) => Ok(exact::r_from_s(m, l)),
        (SequenceKind::R, Egf) => crate::series::egf_r(m, l)?.egf_coefficient(l),
        (SequenceKind::S, Blocks) => Ok(exact::s_via_blocks(m, l)),
        (SequenceKind::S, InclusionExclusion) => exact::s_via_inclusion_exclusion(m, l),
        (SequenceKind::S, FirstBlocks) => exact::s_via_first_blocks(m, l),
        (SequenceKind::S, Egf) => crate::series::egf_s(m, l)?.egf_coefficient(l),
        (kind, method) => Err(Error::InvalidArgument(format!("method {method} does not apply to sequence {kind}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub value: BigNat,
    pub method: Method,
}

/// Cached sequence values keyed by `(kind, m, l)`.
///
/// Readers share the lock; writers are serialized. A write to an occupied
/// cell must carry the same value or it is rejected.
#[derive(Debug, Default)]
pub struct SequenceTable {
    entries: RwLock<BTreeMap<(SequenceKind, usize, usize), Entry>>,
}

impl SequenceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, kind: SequenceKind, m: usize, l: usize) -> Option<Entry> {
        self.entries.read().expect("table lock poisoned").get(&(kind, m, l)).cloned()
    }

    /// Inserts a value, verifying it against any value already present.
    pub fn insert(&self, kind: SequenceKind, m: usize, l: usize, value: BigNat, method: Method) -> Result<()> {
        let mut guard = self.entries.write().expect("table lock poisoned");
        match guard.get(&(kind, m, l)) {
            Some(existing) if existing.value != value => Err(Error::TableConflict {
                key: format!("{kind}({m}, {l})"),
                existing: existing.value.to_string(),
                existing_method: existing.method.name(),
                incoming: value.to_string(),
                incoming_method: method.name(),
            }),
            Some(_) => Ok(()),
            None => {
                guard.insert((kind, m, l), Entry { value, method });
                Ok(())
            }
        }
    }

    /// Returns the cached value or computes it with `method` and caches it.
    pub fn get_or_compute(&self, kind: SequenceKind, m: usize, l: usize, method: Method) -> Result<Entry> {
        if let Some(entry) = self.get(kind, m, l) {
            return Ok(entry);
        }
        let value = evaluate(kind, method, m, l)?;
        self.insert(kind, m, l, value.clone(), method)?;
        Ok(Entry { value, method })
    }

    /// Ordered Bell number `r_l`, stored as `r(0, l)`.
    pub fn ordered_bell(&self, l: usize) -> Result<BigNat> {
        if let Some(entry) = self.get(SequenceKind::R, 0, l) {
            return Ok(entry.value);
        }
        // One pass fills the whole prefix.
        for (i, v) in exact::ordered_bell_prefix(l).into_iter().enumerate() {
            self.insert(SequenceKind::R, 0, i, v, Method::Recurrence)?;
        }
        Ok(self.get(SequenceKind::R, 0, l).expect("just inserted").value)
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("table lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of all entries in key order.
    pub fn entries(&self) -> Vec<((SequenceKind, usize, usize), Entry)> {
        self.entries.read().expect("table lock poisoned").iter().map(|(k, v)| (*k, v.clone())).collect()
    }
}
