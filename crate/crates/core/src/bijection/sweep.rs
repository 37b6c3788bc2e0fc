//! Exhaustive checks of both bijections over every labeled input.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use num_traits::ToPrimitive;

use crate::enumerate::enumerate_bpa;
use crate::exact::{self, BigNat};

use super::{f_forward, f_inverse, g_forward, g_inverse, BarLabel, FOutput, LabeledBpa};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSweep {
    pub bars: usize,
    pub len: usize,
    pub inputs: usize,
    /// Images in `R(m-1, l+1)`.
    pub grown: usize,
    /// Images in `R(m-1, l) x {0..m-1}`.
    pub shifted: usize,
    pub distinct_images: usize,
    pub failures: Vec<String>,
}

impl FSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the single-bar map over all `2m r(m, l)` inputs, checks both round
/// trips and the split of the image between the two codomain parts.
pub fn f_sweep(bars: usize, len: usize) -> FSweep {
    let mut out = FSweep { bars, len, inputs: 0, grown: 0, shifted: 0, distinct_images: 0, failures: Vec::new() };
    if bars == 0 {
        return out;
    }
    let mut images = HashSet::new();
    for base in enumerate_bpa(bars, len) {
        for bar in 0..bars {
            for bit in 0..=1u8 {
                out.inputs += 1;
                let x = LabeledBpa::with_single_binary(base.clone(), bar, bit).expect("valid bar");
                let y = match f_forward(&x) {
                    Ok(y) => y,
                    Err(e) => {
                        out.failures.push(format!("f({x}) failed: {e}"));
                        continue;
                    }
                };
                match &y {
                    FOutput::Grown(_) => out.grown += 1,
                    FOutput::Shifted { .. } => out.shifted += 1,
                }
                match f_inverse(&y, bars, len) {
                    Ok(back) if back == x => {}
                    Ok(back) => out.failures.push(format!("f^-1(f({x})) = {back}")),
                    Err(e) => out.failures.push(format!("f^-1(f({x})) failed: {e}")),
                }
                images.insert(y);
            }
        }
    }
    out.distinct_images = images.len();

    // Codomain side: every target maps back to itself.
    let targets = enumerate_bpa(bars - 1, len + 1).map(FOutput::Grown).chain(
        enumerate_bpa(bars - 1, len)
            .flat_map(|a| (0..bars).map(move |position| FOutput::Shifted { arrangement: a.clone(), position })),
    );
    for y in targets {
        match f_inverse(&y, bars, len).and_then(|x| f_forward(&x)) {
            Ok(again) if again == y => {}
            Ok(again) => out.failures.push(format!("f(f^-1({y:?})) = {again:?}")),
            Err(e) => out.failures.push(format!("f(f^-1({y:?})) failed: {e}")),
        }
    }

    let r = |m, l| exact::r_via_recurrence(m, l).expect("exact").to_usize().expect("small");
    if out.inputs != 2 * bars * r(bars, len) {
        out.failures.push(format!("{} inputs, expected 2m r(m,l) = {}", out.inputs, 2 * bars * r(bars, len)));
    }
    if out.distinct_images != out.inputs {
        out.failures.push(format!("{} distinct images for {} inputs", out.distinct_images, out.inputs));
    }
    if out.grown != r(bars - 1, len + 1) {
        out.failures.push(format!("grown images {} != r(m-1,l+1) = {}", out.grown, r(bars - 1, len + 1)));
    }
    if out.shifted != bars * r(bars - 1, len) {
        out.failures.push(format!("shifted images {} != m r(m-1,l) = {}", out.shifted, bars * r(bars - 1, len)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSweep {
    pub bars: usize,
    pub len: usize,
    pub inputs: usize,
    pub distinct_images: usize,
    /// Image count keyed by the number of cycles `i + 1`.
    pub by_cycle_count: BTreeMap<usize, usize>,
    pub failures: Vec<String>,
}

impl GSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every fully labeled arrangement with `bars` bars on `1..=len`.
pub fn fully_labeled(bars: usize, len: usize) -> impl Iterator<Item = LabeledBpa> {
    enumerate_bpa(bars, len).flat_map(move |base| {
        (1..=bars).permutations(bars).flat_map(move |orders| {
            let base = base.clone();
            (0..1usize << bars).map(move |mask| {
                let labels =
                    orders.iter().enumerate().map(|(i, &o)| BarLabel::full(((mask >> i) & 1) as u8, o)).collect();
                LabeledBpa::new(base.clone(), labels).expect("valid labels")
            })
        })
    })
}

/// Runs the iterated map over all `2^m m! r(m, l)` inputs, checking the
/// round trip, injectivity, the cycle/size law and the stratified count
/// `c(m+1, i+1) r_{l+i}` per cycle count.
pub fn g_sweep(bars: usize, len: usize) -> GSweep {
    let mut out =
        GSweep { bars, len, inputs: 0, distinct_images: 0, by_cycle_count: BTreeMap::new(), failures: Vec::new() };
    let mut images = HashSet::new();
    for x in fully_labeled(bars, len) {
        out.inputs += 1;
        let (cycles, pa) = match g_forward(&x) {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("g({x}) failed: {e}"));
                continue;
            }
        };
        if cycles.cycle_count() - 1 != pa.len() - len {
            out.failures.push(format!("g({x}): {} cycles but {} elements", cycles.cycle_count(), pa.len()));
        }
        *out.by_cycle_count.entry(cycles.cycle_count()).or_default() += 1;
        match g_inverse(&cycles, &pa) {
            Ok(back) if back == x => {}
            Ok(back) => out.failures.push(format!("g^-1(g({x})) = {back}")),
            Err(e) => out.failures.push(format!("g^-1(g({x})) failed: {e}")),
        }
        images.insert((cycles, pa));
    }
    out.distinct_images = images.len();

    let expected_inputs =
        (BigNat::from(1u32) << bars) * exact::factorial(bars) * exact::r_via_recurrence(bars, len).expect("exact");
    if BigNat::from(out.inputs) != expected_inputs {
        out.failures.push(format!("{} inputs, expected {expected_inputs}", out.inputs));
    }
    if out.distinct_images != out.inputs {
        out.failures.push(format!("{} distinct images for {} inputs", out.distinct_images, out.inputs));
    }
    let cycles_row = exact::stirling1_row(bars + 1);
    let bell = exact::ordered_bell_prefix(len + bars);
    for i in 0..=bars {
        let expected = &cycles_row[i + 1] * &bell[len + i];
        let got = BigNat::from(*out.by_cycle_count.get(&(i + 1)).unwrap_or(&0));
        if got != expected {
            out.failures.push(format!("{got} images with {} cycles, expected c(m+1,i+1) r_(l+i) = {expected}", i + 1));
        }
    }
    out
}
