//! Executable bijections behind the bar-removal recurrence (`f`) and the
//! Stirling-first-kind expansion (`g`), with inverses and exhaustive sweeps.

mod cycles;
mod f;
mod g;
mod labeled;
pub mod sweep;

pub use cycles::CyclePermutation;
pub use f::{f_forward, f_inverse, FOutput};
pub use g::{g_forward, g_inverse};
pub use labeled::{BarLabel, LabeledBpa};

use crate::arrangement::{BarredPA, Block, PreferentialArrangement};

/// Left-to-right view of a barred arrangement: blocks and bars interleaved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Item<B> {
    Block(Block),
    Bar(B),
}

pub(crate) fn to_items<B: Clone>(bpa: &BarredPA, bar: impl Fn(usize) -> B) -> Vec<Item<B>> {
    let mut items = Vec::new();
    for (i, section) in bpa.sections().iter().enumerate() {
        if i > 0 {
            items.push(Item::Bar(bar(i - 1)));
        }
        items.extend(section.blocks().iter().cloned().map(Item::Block));
    }
    items
}

/// Splits an item sequence back into sections and the bar payloads in
/// left-to-right order.
pub(crate) fn from_items<B>(items: Vec<Item<B>>) -> (BarredPA, Vec<B>) {
    let mut sections = vec![Vec::new()];
    let mut bars = Vec::new();
    for item in items {
        match item {
            Item::Block(b) => sections.last_mut().expect("section").push(b),
            Item::Bar(p) => {
                bars.push(p);
                sections.push(Vec::new());
            }
        }
    }
    let sections = sections.into_iter().map(PreferentialArrangement::from_blocks_unchecked).collect();
    (BarredPA::from_sections_unchecked(sections), bars)
}
