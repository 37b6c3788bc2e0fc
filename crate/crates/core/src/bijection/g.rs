use std::collections::BTreeMap;

use crate::arrangement::PreferentialArrangement;
use crate::error::{Error, Result};

use super::{from_items, to_items, BarLabel, CyclePermutation, Item, LabeledBpa};

/// Iterated bar-removal map.
///
/// Every bar carries a binary label and a distinct order label in `1..=m`.
/// An extra bar with order label `m + 1` is placed at the left end, then bars
/// are resolved in increasing order label with the single-bar rules, using
/// the next unused integer as the new element. Each bar keeps a cycle label
/// (initially itself); a bar removed without adding an element appends its
/// cycle label to the bar on its left, and a bar that adds an element closes
/// its cycle label into the permutation. The extra bar's label closes last.
///
/// Returns the permutation of `1..=m+1` and the resulting arrangement; the
/// arrangement has `l + i` elements exactly when the permutation has `i + 1`
/// cycles.
pub fn g_forward(x: &LabeledBpa) -> Result<(CyclePermutation, PreferentialArrangement)> {
    let m = x.bars();
    let mut seen = vec![false; m + 2];
    for label in &x.labels {
        let (Some(bit), Some(order)) = (label.binary, label.order) else {
            return Err(Error::InvalidLabels("every bar needs a binary and an order label".into()));
        };
        if bit > 1 || order == 0 || order > m || std::mem::replace(&mut seen[order], true) {
            return Err(Error::InvalidLabels(format!("order labels must be a permutation of 1..={m}")));
        }
    }
    let extra = m + 1;
    let bits: BTreeMap<usize, u8> =
        x.labels.iter().map(|l| (l.order.expect("checked"), l.binary.expect("checked"))).collect();

    let mut items = vec![Item::Bar(extra)];
    items.extend(to_items(&x.base, |i| x.labels[i].order.expect("checked")));
    let mut cycle_label: Vec<Vec<usize>> = (0..=extra).map(|o| vec![o]).collect();
    let mut cycles = Vec::new();
    let mut next = x.len() + 1;

    for order in 1..=m {
        let pos = items.iter().position(|it| *it == Item::Bar(order)).expect("bar present");
        if bits[&order] == 0 {
            items[pos] = Item::Block(vec![next]);
            next += 1;
            cycles.push(std::mem::take(&mut cycle_label[order]));
            continue;
        }
        items.remove(pos);
        // The extra bar guarantees something sits to the left.
        match &mut items[pos - 1] {
            Item::Block(block) => {
                block.push(next);
                next += 1;
                cycles.push(std::mem::take(&mut cycle_label[order]));
            }
            Item::Bar(left) => {
                let left = *left;
                let tail = std::mem::take(&mut cycle_label[order]);
                cycle_label[left].extend(tail);
            }
        }
    }
    debug_assert_eq!(items[0], Item::Bar(extra));
    items.remove(0);
    cycles.push(std::mem::take(&mut cycle_label[extra]));

    let (base, leftover) = from_items(items);
    debug_assert!(leftover.is_empty());
    let pa = base.into_sections().pop().expect("one section");
    Ok((CyclePermutation::new(extra, cycles)?, pa))
}

/// Inverts [`g_forward`]: rebuilds the labeled arrangement from a
/// permutation of `1..=m+1` with `i + 1` cycles and an arrangement of `l + i`
/// elements.
pub fn g_inverse(y: &CyclePermutation, z: &PreferentialArrangement) -> Result<LabeledBpa> {
    let extra = y.n();
    if extra == 0 {
        return Err(Error::InvalidCycles("permutation must act on at least one element".into()));
    }
    let added = y.cycle_count() - 1;
    let total = z.len();
    if added > total {
        return Err(Error::OutsideCodomain(format!(
            "{} cycles need at least {added} elements, arrangement has {total}",
            y.cycle_count()
        )));
    }
    let l = total - added;
    let mut owner = y.cycles().iter();
    let extra_cycle = owner.next().expect("at least one cycle");
    debug_assert_eq!(extra_cycle[0], extra);
    // Cycles other than the extra bar's, by increasing maximum, pair with
    // l+1, l+2, ... in order.
    let mut by_element: BTreeMap<usize, &Vec<usize>> = BTreeMap::new();
    for (k, cycle) in owner.rev().enumerate() {
        by_element.insert(l + 1 + k, cycle);
    }

    let run = |cycle: &[usize], first_bit: u8, out: &mut Vec<Item<BarLabel>>| {
        for (j, &order) in cycle.iter().enumerate() {
            let bit = if j == 0 { first_bit } else { 1 };
            out.push(Item::Bar(BarLabel::full(bit, order)));
        }
    };

    let mut items = Vec::new();
    run(&extra_cycle[1..], 1, &mut items);
    for block in z.blocks() {
        let (original, new): (Vec<usize>, Vec<usize>) = block.iter().partition(|&&e| e <= l);
        let mut first_bit = if original.is_empty() { 0 } else { 1 };
        if !original.is_empty() {
            items.push(Item::Block(original));
        }
        for e in new {
            run(by_element[&e], first_bit, &mut items);
            first_bit = 1;
        }
    }
    let (base, labels) = from_items(items);
    LabeledBpa::new(base, labels)
}
