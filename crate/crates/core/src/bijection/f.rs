use crate::arrangement::{validate_cover, BarredPA};
use crate::error::{Error, Result};

use super::{from_items, to_items, BarLabel, Item, LabeledBpa};

/// Image of the single-bar map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FOutput {
    /// The labeled bar became the new element `l + 1`; one bar fewer.
    Grown(BarredPA),
    /// The labeled bar was dropped; `position` is the number of bars that
    /// stood to its left (0 when it was at the left end).
    Shifted { arrangement: BarredPA, position: usize },
}

/// Applies the single-bar map to an arrangement with `m >= 1` bars on
/// `1..=l`, exactly one of which carries a binary label.
///
/// - label 0: the bar becomes the singleton block `{l + 1}`;
/// - label 1 with a block directly to its left: the bar is removed and
///   `l + 1` joins that block;
/// - label 1 otherwise: the bar is removed and its position is reported.
pub fn f_forward(x: &LabeledBpa) -> Result<FOutput> {
    let m = x.bars();
    if m == 0 {
        return Err(Error::InvalidLabels("the single-bar map needs at least one bar".into()));
    }
    if x.labels.iter().any(|l| l.order.is_some()) {
        return Err(Error::InvalidLabels("order labels are not used by the single-bar map".into()));
    }
    let marked: Vec<usize> = (0..m).filter(|&i| x.labels[i].binary.is_some()).collect();
    let [bar] = marked[..] else {
        return Err(Error::InvalidLabels(format!("expected exactly one labeled bar, found {}", marked.len())));
    };
    let bit = x.labels[bar].binary.expect("marked");
    let new = x.len() + 1;

    let mut items = to_items(&x.base, |i| i);
    let pos = items.iter().position(|it| *it == Item::Bar(bar)).expect("bar present");
    if bit == 0 {
        items[pos] = Item::Block(vec![new]);
        return Ok(FOutput::Grown(from_items(items).0));
    }
    items.remove(pos);
    if let Some(Item::Block(block)) = pos.checked_sub(1).map(|p| &mut items[p]) {
        block.push(new);
        return Ok(FOutput::Grown(from_items(items).0));
    }
    Ok(FOutput::Shifted { arrangement: from_items(items).0, position: bar })
}

/// Inverts [`f_forward`] for a target with `m - 1` bars built from `l`
/// original elements.
pub fn f_inverse(y: &FOutput, m: usize, l: usize) -> Result<LabeledBpa> {
    if m == 0 {
        return Err(Error::OutsideCodomain("m must be at least 1".into()));
    }
    match y {
        FOutput::Grown(a) => {
            check_shape(a, m - 1, l + 1)?;
            let new = l + 1;
            let mut items = to_items(a, |_| BarLabel::default());
            let pos = items
                .iter()
                .position(|it| matches!(it, Item::Block(b) if b.contains(&new)))
                .ok_or_else(|| Error::OutsideCodomain(format!("element {new} not present")))?;
            let Item::Block(block) = &mut items[pos] else { unreachable!() };
            if block.len() == 1 {
                items[pos] = Item::Bar(BarLabel::binary(0));
            } else {
                block.retain(|&e| e != new);
                items.insert(pos + 1, Item::Bar(BarLabel::binary(1)));
            }
            let (base, labels) = from_items(items);
            LabeledBpa::new(base, labels)
        }
        FOutput::Shifted { arrangement, position } => {
            check_shape(arrangement, m - 1, l)?;
            if *position > m - 1 {
                return Err(Error::OutsideCodomain(format!("position {position} exceeds {}", m - 1)));
            }
            let mut items = to_items(arrangement, |_| BarLabel::default());
            let at = if *position == 0 {
                0
            } else {
                let mut seen = 0;
                items
                    .iter()
                    .position(|it| {
                        if matches!(it, Item::Bar(_)) {
                            seen += 1;
                        }
                        seen == *position
                    })
                    .expect("bar exists")
                    + 1
            };
            items.insert(at, Item::Bar(BarLabel::binary(1)));
            let (base, labels) = from_items(items);
            LabeledBpa::new(base, labels)
        }
    }
}

fn check_shape(a: &BarredPA, bars: usize, len: usize) -> Result<()> {
    if a.bars() != bars {
        return Err(Error::WrongBarCount { expected: bars, found: a.bars() });
    }
    validate_cover(a.sections().iter().flat_map(|s| s.elements()), len)
        .map_err(|e| Error::OutsideCodomain(e.to_string()))
}
