//! Flat-file value cache.
//!
//! ```text
//! bpa-cache 1
//! r 2 2 15
//! s 1 3 18
//! ```
//!
//! One entry per line, `kind m l value`, sorted on save. Every entry is
//! recomputed on load and rejected if it disagrees.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bpa_core::table::evaluate;
use bpa_core::{BigNat, Method, SequenceKind};

pub const HEADER: &str = "bpa-cache 1";

type Key = (SequenceKind, usize, usize);

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CacheFile {
    entries: BTreeMap<Key, BigNat>,
}

impl CacheFile {
    /// Loads `path`, or starts empty if it does not exist.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::default());
        }
        let text = fs::read_to_string(path).with_context(|| format!("reading cache {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("loading cache {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(HEADER) => {}
            Some(other) => bail!("unsupported cache header {other:?}, expected {HEADER:?}"),
            None => bail!("empty cache file"),
        }
        let mut entries = BTreeMap::new();
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [kind, m, l, value] = fields[..] else {
                bail!("line {lineno}: expected `kind m l value`, got {line:?}");
            };
            let kind: SequenceKind = kind.parse().map_err(|e| anyhow::anyhow!("line {lineno}: {e}"))?;
            let m: usize = m.parse().with_context(|| format!("line {lineno}: bad m"))?;
            let l: usize = l.parse().with_context(|| format!("line {lineno}: bad l"))?;
            let value: BigNat = value.parse().with_context(|| format!("line {lineno}: bad value"))?;
            let check = evaluate(kind, Method::exact_methods(kind)[0], m, l)?;
            if check != value {
                bail!("line {lineno}: {kind}({m},{l}) stored as {value}, but the formula gives {check}");
            }
            if entries.insert((kind, m, l), value).is_some() {
                bail!("line {lineno}: duplicate entry for {kind}({m},{l})");
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, kind: SequenceKind, m: usize, l: usize) -> Option<&BigNat> {
        self.entries.get(&(kind, m, l))
    }

    pub fn insert(&mut self, kind: SequenceKind, m: usize, l: usize, value: BigNat) -> Result<()> {
        if let Some(old) = self.entries.get(&(kind, m, l)) {
            if *old != value {
                bail!("cache conflict for {kind}({m},{l}): {old} vs {value}");
            }
        }
        self.entries.insert((kind, m, l), value);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!("{HEADER}\n");
        for ((kind, m, l), v) in &self.entries {
            out.push_str(&format!("{kind} {m} {l} {v}\n"));
        }
        out
    }

    /// Writes through a sibling temporary file so a crash never leaves a
    /// half-written cache.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = PathBuf::from(path);
        tmp.set_extension("tmp");
        let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(self.render().as_bytes()).with_context(|| format!("writing {}", tmp.display()))?;
        f.sync_all()?;
        fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))
    }
}
