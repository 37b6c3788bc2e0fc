use std::fmt;

use crate::arrangement::{parse_section, render_section, validate_cover, BarredPA, PreferentialArrangement};
use crate::error::{Error, Result};

/// Labels carried by one bar. `binary` is 0 or 1; `order` is in `1..=m`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarLabel {
    pub binary: Option<u8>,
    pub order: Option<usize>,
}

impl BarLabel {
    pub fn binary(bit: u8) -> Self {
        Self { binary: Some(bit), order: None }
    }

    pub fn full(bit: u8, order: usize) -> Self {
        Self { binary: Some(bit), order: Some(order) }
    }
}

/// A barred arrangement with a label record per bar, keyed by the bar's
/// left-to-right index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledBpa {
    pub base: BarredPA,
    pub labels: Vec<BarLabel>,
}

impl LabeledBpa {
    pub fn new(base: BarredPA, labels: Vec<BarLabel>) -> Result<Self> {
        if labels.len() != base.bars() {
            return Err(Error::InvalidLabels(format!("{} labels for {} bars", labels.len(), base.bars())));
        }
        if let Some(bad) = labels.iter().filter_map(|l| l.binary).find(|&b| b > 1) {
            return Err(Error::InvalidLabels(format!("binary label {bad}")));
        }
        Ok(Self { base, labels })
    }

    /// Unlabeled bars plus a single binary label on bar `index`.
    pub fn with_single_binary(base: BarredPA, index: usize, bit: u8) -> Result<Self> {
        let mut labels = vec![BarLabel::default(); base.bars()];
        let slot = labels.get_mut(index).ok_or_else(|| Error::InvalidLabels(format!("bar {index} does not exist")))?;
        *slot = BarLabel::binary(bit);
        Self::new(base, labels)
    }

    pub fn bars(&self) -> usize {
        self.base.bars()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Debug text: each bar is `|` followed by optional `^b` and `_o`, then a
    /// space before a nonempty section.
    pub fn render(&self) -> String {
        let sections = self.base.sections();
        let mut out = render_section(sections[0].blocks(), false);
        for (label, section) in self.labels.iter().zip(&sections[1..]) {
            out.push('|');
            if let Some(b) = label.binary {
                out.push_str(&format!("^{b}"));
            }
            if let Some(o) = label.order {
                out.push_str(&format!("_{o}"));
            }
            if !section.is_empty() {
                out.push(' ');
                out.push_str(&render_section(section.blocks(), false));
            }
        }
        out
    }

    /// Parses the debug text produced by [`LabeledBpa::render`]. Sections may
    /// use the compact digit form when `len <= 9`.
    pub fn parse(text: &str, len: usize, bars: usize) -> Result<Self> {
        let pieces: Vec<&str> = text.split('|').collect();
        if pieces.len() != bars + 1 {
            return Err(Error::WrongBarCount { expected: bars, found: pieces.len() - 1 });
        }
        let mut sections = Vec::with_capacity(pieces.len());
        let mut labels = Vec::with_capacity(bars);
        for (i, piece) in pieces.into_iter().enumerate() {
            let body = if i == 0 {
                piece
            } else {
                let (label, rest) = parse_label(piece, text)?;
                labels.push(label);
                rest
            };
            sections.push(PreferentialArrangement::from_blocks_unchecked(parse_section(body, text, len)?));
        }
        validate_cover(sections.iter().flat_map(|s| s.elements()), len)?;
        Self::new(BarredPA::from_sections_unchecked(sections), labels)
    }
}

impl fmt::Display for LabeledBpa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_label<'a>(piece: &'a str, whole: &str) -> Result<(BarLabel, &'a str)> {
    let malformed = |reason: &str| Error::Malformed { text: whole.to_string(), reason: reason.to_string() };
    let mut label = BarLabel::default();
    let mut rest = piece;
    if let Some(after) = rest.strip_prefix('^') {
        let digits = after.bytes().take_while(u8::is_ascii_digit).count();
        if digits != 1 {
            return Err(malformed("binary label must be one digit"));
        }
        label.binary = Some(after.as_bytes()[0] - b'0');
        rest = &after[1..];
    }
    if let Some(after) = rest.strip_prefix('_') {
        let digits = after.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(malformed("order label missing"));
        }
        label.order = Some(after[..digits].parse().map_err(|_| malformed("order label too large"))?);
        rest = &after[digits..];
    }
    if !rest.is_empty() && !rest.starts_with(char::is_whitespace) && (label.binary.is_some() || label.order.is_some()) {
        return Err(malformed("labels must be followed by a space"));
    }
    Ok((label, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_labels() {
        let x = LabeledBpa::parse("|^1_3|^0_7|^1_1|^1_4 123,4|^1_2|^1_6|^1_5", 4, 7).unwrap();
        assert_eq!(x.labels[0], BarLabel::full(1, 3));
        assert_eq!(x.labels[1], BarLabel::full(0, 7));
        assert_eq!(x.render(), "|^1_3|^0_7|^1_1|^1_4 1 2 3,4|^1_2|^1_6|^1_5");
        assert_eq!(LabeledBpa::parse(&x.render(), 4, 7).unwrap(), x);
    }

    #[test]
    fn single_binary_label() {
        let x = LabeledBpa::parse("123|^0", 3, 1).unwrap();
        assert_eq!(x.labels, vec![BarLabel::binary(0)]);
        let y = LabeledBpa::with_single_binary(BarredPA::parse("123|", 3, 1).unwrap(), 0, 0).unwrap();
        assert_eq!(x, y);
        assert!(LabeledBpa::with_single_binary(BarredPA::empty(1), 1, 0).is_err());
    }

    #[test]
    fn label_errors() {
        assert!(LabeledBpa::parse("1|^2", 1, 1).is_err());
        assert!(LabeledBpa::parse("1|^", 1, 1).is_err());
        assert!(LabeledBpa::parse("1|_", 1, 1).is_err());
        assert!(LabeledBpa::parse("|_12", 1, 1).is_err());
    }
}
