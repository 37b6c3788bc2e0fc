//! Preferential arrangements, barred preferential arrangements, and their
//! text form.
//!
//! Canonical text: elements of a block ascending and separated by a space,
//! blocks separated by `,`, sections separated by `|`. An empty section is the
//! empty string between two bars, so two bars over the empty set render as
//! `||`. For arrangements of at most nine elements a compact form writes the
//! elements of a block adjacent (`12` for the block `{1, 2}`).

use std::fmt;

use crate::error::{Error, Result};

/// A single tied block: nonempty, strictly ascending.
pub type Block = Vec<usize>;

/// Ordered list of nonempty, pairwise disjoint blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreferentialArrangement {
    blocks: Vec<Block>,
}

impl PreferentialArrangement {
    /// Builds an arrangement on `1..=len`, sorting each block and validating
    /// that the blocks partition the ground set.
    pub fn new(blocks: Vec<Block>, len: usize) -> Result<Self> {
        let pa = Self::from_blocks_unchecked(blocks);
        validate_cover(pa.blocks.iter().flatten().copied(), len)?;
        Ok(pa)
    }

    /// Sorts each block but performs no cover check. Blocks must be nonempty.
    pub(crate) fn from_blocks_unchecked(mut blocks: Vec<Block>) -> Self {
        for b in &mut blocks {
            debug_assert!(!b.is_empty());
            b.sort_unstable();
        }
        Self { blocks }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flatten().copied()
    }

    /// Canonical rendering.
    pub fn render(&self) -> String {
        render_section(&self.blocks, false)
    }

    /// Digit-adjacent rendering; `None` when some element exceeds 9.
    pub fn render_compact(&self) -> Option<String> {
        compact_ok(self.elements()).then(|| render_section(&self.blocks, true))
    }

    pub fn parse(text: &str, len: usize) -> Result<Self> {
        let bpa = BarredPA::parse(text, len, 0)?;
        Ok(bpa.into_sections().pop().expect("one section"))
    }
}

impl fmt::Display for PreferentialArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A preferential arrangement split into `bars + 1` ordered sections.
///
/// Stored as sections, so a bar can never split a block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarredPA {
    sections: Vec<PreferentialArrangement>,
}

impl BarredPA {
    /// Builds a barred arrangement on `1..=len` from its sections.
    pub fn new(sections: Vec<PreferentialArrangement>, len: usize) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::Malformed {
                text: String::new(),
                reason: "a barred arrangement has at least one section".into(),
            });
        }
        validate_cover(sections.iter().flat_map(|s| s.elements()), len)?;
        Ok(Self { sections })
    }

    pub(crate) fn from_sections_unchecked(sections: Vec<PreferentialArrangement>) -> Self {
        debug_assert!(!sections.is_empty());
        Self { sections }
    }

    /// The arrangement with `bars` bars and no elements.
    pub fn empty(bars: usize) -> Self {
        Self { sections: vec![PreferentialArrangement::empty(); bars + 1] }
    }

    pub fn sections(&self) -> &[PreferentialArrangement] {
        &self.sections
    }

    pub fn into_sections(self) -> Vec<PreferentialArrangement> {
        self.sections
    }

    pub fn bars(&self) -> usize {
        self.sections.len() - 1
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.sections.iter().map(PreferentialArrangement::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn block_count(&self) -> usize {
        self.sections.iter().map(|s| s.blocks().len()).sum()
    }

    pub fn empty_sections(&self) -> usize {
        self.sections.iter().filter(|s| s.is_empty()).count()
    }

    /// True when no section is empty.
    pub fn is_special(&self) -> bool {
        self.empty_sections() == 0
    }

    pub fn render(&self) -> String {
        self.sections.iter().map(|s| render_section(s.blocks(), false)).collect::<Vec<_>>().join("|")
    }

    pub fn render_compact(&self) -> Option<String> {
        compact_ok(self.sections.iter().flat_map(|s| s.elements()))
            .then(|| self.sections.iter().map(|s| render_section(s.blocks(), true)).collect::<Vec<_>>().join("|"))
    }

    /// Parses canonical or compact text into an arrangement on `1..=len`
    /// with `bars` bars.
    pub fn parse(text: &str, len: usize, bars: usize) -> Result<Self> {
        let pieces: Vec<&str> = text.split('|').collect();
        if pieces.len() != bars + 1 {
            return Err(Error::WrongBarCount { expected: bars, found: pieces.len() - 1 });
        }
        let sections = pieces
            .into_iter()
            .map(|piece| parse_section(piece, text, len).map(PreferentialArrangement::from_blocks_unchecked))
            .collect::<Result<Vec<_>>>()?;
        validate_cover(sections.iter().flat_map(|s| s.elements()), len)?;
        Ok(Self { sections })
    }
}

impl fmt::Display for BarredPA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn compact_ok(mut elements: impl Iterator<Item = usize>) -> bool {
    elements.all(|e| e <= 9)
}

pub(crate) fn render_section(blocks: &[Block], compact: bool) -> String {
    let sep = if compact { "" } else { " " };
    blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)).collect::<Vec<_>>().join(",")
}

/// Parses one section (no bars) into unsorted blocks. Range checks only;
/// duplicates and cover are checked by the caller.
pub(crate) fn parse_section(piece: &str, whole: &str, len: usize) -> Result<Vec<Block>> {
    let trimmed = piece.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut blocks = Vec::new();
    for raw in trimmed.split(',') {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(Error::Malformed { text: whole.to_string(), reason: "empty block".into() });
        }
        let mut block = Vec::new();
        for token in raw.split_whitespace() {
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Malformed {
                    text: whole.to_string(),
                    reason: format!("unexpected token {token:?}"),
                });
            }
            if token.len() > 1 && len <= 9 {
                // compact form: one digit per element
                block.extend(token.bytes().map(|b| (b - b'0') as usize));
            } else {
                let value: usize = token.parse().map_err(|_| Error::Malformed {
                    text: whole.to_string(),
                    reason: format!("number {token:?} does not fit"),
                })?;
                block.push(value);
            }
        }
        for &e in &block {
            if e == 0 || e > len {
                return Err(Error::ElementOutOfRange { element: e, len });
            }
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// Checks that `elements` is exactly `1..=len` with no repeats.
pub(crate) fn validate_cover(elements: impl Iterator<Item = usize>, len: usize) -> Result<()> {
    let mut seen = vec![false; len + 1];
    for e in elements {
        if e == 0 || e > len {
            return Err(Error::ElementOutOfRange { element: e, len });
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::DuplicateElement(e));
        }
    }
    match (1..=len).find(|&e| !seen[e]) {
        Some(missing) => Err(Error::MissingElement(missing)),
        None => Ok(()),
    }
}
