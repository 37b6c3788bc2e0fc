//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p bpa-core --test acceptance`.

#![allow(clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use bpa_core::asymptotics::{
    asymptotic_error_constant, asymptotic_ratio, convergent_series_r, first_omitted_term, gross_series_barred,
    gross_series_r,
};
use bpa_core::bijection::sweep::{f_sweep, g_sweep};
use bpa_core::bijection::{g_forward, g_inverse};
use bpa_core::enumerate::{enumerate_bpa, enumerate_special};
use bpa_core::exact::{self, BigNat};
use bpa_core::series::egf_r;
use bpa_core::{CyclePermutation, LabeledBpa, PreferentialArrangement};

/// Rows m = 0..=5, columns l = 0..=8.
const TABLE: [[u64; 9]; 6] = [
    [1, 1, 3, 13, 75, 541, 4683, 47293, 545835],
    [1, 2, 8, 44, 308, 2612, 25988, 296564, 3816548],
    [1, 3, 15, 99, 807, 7803, 87135, 1102419, 15575127],
    [1, 4, 24, 184, 1704, 18424, 227304, 3147064, 48278184],
    [1, 5, 35, 305, 3155, 37625, 507035, 7608305, 125687555],
    [1, 6, 48, 468, 5340, 69516, 1014348, 16372908, 289366860],
];

/// s(m, l) for m = 0..=4, l = 0..=10, from an independent convolution.
const SPECIAL: [[u64; 11]; 5] = [
    [0, 1, 3, 13, 75, 541, 4683, 47293, 545835, 7087261, 102247563],
    [0, 0, 2, 18, 158, 1530, 16622, 201978, 2724878, 40492890, 657944942],
    [0, 0, 0, 6, 108, 1590, 23220, 354606, 5762988, 100203270, 1864917540],
    [0, 0, 0, 0, 24, 720, 15960, 327600, 6693624, 140268240, 3055965720],
    [0, 0, 0, 0, 0, 120, 5400, 168000, 4611600, 121491720, 3190509000],
];

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), notes: Vec::new(), checked: 0 }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn equal<T: PartialEq + std::fmt::Display>(&mut self, what: &str, got: T, want: T) {
        self.expect(got == want, || format!("{what}: got {got}, want {want}"));
    }
}

fn n(v: u64) -> BigNat {
    BigNat::from(v)
}

fn table_reproduction() -> Outcome {
    let mut out = Outcome::new();
    for (m, row) in TABLE.iter().enumerate() {
        let series = egf_r(m, 8).expect("series");
        for (l, &want) in row.iter().enumerate() {
            let want = n(want);
            let at = format!("(m={m}, l={l})");
            out.equal(&format!("recurrence {at}"), exact::r_via_recurrence(m, l).unwrap(), want.clone());
            out.equal(&format!("stirling-first {at}"), exact::r_via_stirling_first(m, l).unwrap(), want.clone());
            out.equal(&format!("blocks {at}"), exact::r_via_blocks(m, l), want.clone());
            out.equal(&format!("egf {at}"), series.egf_coefficient(l).unwrap(), want);
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut out = Outcome::new();
    for m in 0..=3 {
        for l in 0..=6 {
            let at = format!("(m={m}, l={l})");
            out.equal(&format!("bpa count {at}"), n(enumerate_bpa(m, l).count() as u64), n(TABLE[m][l]));
            let special = n(enumerate_special(m, l).count() as u64);
            out.equal(&format!("special vs blocks {at}"), special.clone(), exact::s_via_blocks(m, l));
            out.equal(
                &format!("special vs incl-excl {at}"),
                special.clone(),
                exact::s_via_inclusion_exclusion(m, l).unwrap(),
            );
            out.equal(
                &format!("special vs first-blocks {at}"),
                special.clone(),
                exact::s_via_first_blocks(m, l).unwrap(),
            );
            out.equal(&format!("special frozen {at}"), special, n(SPECIAL[m][l]));
        }
    }
    out
}

fn bijection_f() -> Outcome {
    let mut out = Outcome::new();
    for m in 1..=3 {
        for l in 0..=4 {
            let s = f_sweep(m, l);
            let at = format!("(m={m}, l={l})");
            out.equal(&format!("inputs {at}"), s.inputs as u64, 2 * m as u64 * TABLE[m][l]);
            out.equal(&format!("grown {at}"), s.grown as u64, TABLE[m - 1][l + 1]);
            out.equal(&format!("shifted {at}"), s.shifted as u64, m as u64 * TABLE[m - 1][l]);
            out.expect(s.passed(), || format!("f sweep {at}: {:?}", s.failures));
        }
    }
    out
}

fn bijection_g() -> Outcome {
    let mut out = Outcome::new();
    for m in 0..=3 {
        for l in 0..=3 {
            let s = g_sweep(m, l);
            let at = format!("(m={m}, l={l})");
            let want = (1u64 << m) * (1..=m as u64).product::<u64>() * TABLE[m][l];
            out.equal(&format!("inputs {at}"), s.inputs as u64, want);
            let cycles = exact::stirling1_row(m + 1);
            for i in 0..=m {
                let got = n(*s.by_cycle_count.get(&(i + 1)).unwrap_or(&0) as u64);
                out.equal(&format!("{} cycles {at}", i + 1), got, &cycles[i + 1] * n(TABLE[0][l + i]));
            }
            out.expect(s.passed(), || format!("g sweep {at}: {:?}", s.failures));
        }
    }

    let x = LabeledBpa::parse("|^0_3 12|^1_4|^1_1|^1_2 3", 3, 4).unwrap();
    let (cycles, pa) = g_forward(&x).unwrap();
    out.equal("forward example cycles", cycles.to_string(), "(5)(412)(3)".into());
    out.equal("forward example arrangement", pa.render_compact().unwrap(), "4,125,3".into());

    let y = CyclePermutation::parse("(83)(714)(65)(2)", 8).unwrap();
    let z = PreferentialArrangement::parse("7,123,456", 7).unwrap();
    let back = g_inverse(&y, &z).unwrap();
    out.equal("inverse example", back.render(), "|^1_3|^0_7|^1_1|^1_4 1 2 3,4|^1_2|^1_6|^1_5".into());
    out.expect(g_forward(&back).map(|v| v == (y, z)).unwrap_or(false), || "inverse example round trip".into());
    out
}

fn special_identities() -> Outcome {
    let mut out = Outcome::new();
    for m in 0..=4 {
        for l in 0..=10 {
            let at = format!("(m={m}, l={l})");
            let blocks = exact::s_via_blocks(m, l);
            out.equal(&format!("blocks frozen {at}"), blocks.clone(), n(SPECIAL[m][l]));
            out.equal(
                &format!("inclusion-exclusion {at}"),
                exact::s_via_inclusion_exclusion(m, l).unwrap(),
                blocks.clone(),
            );
            out.equal(&format!("first-blocks {at}"), exact::s_via_first_blocks(m, l).unwrap(), blocks);
            let r = exact::r_via_recurrence(m, l).unwrap();
            out.equal(&format!("r from s {at}"), exact::r_from_s(m, l), r.clone());
            if l >= 1 {
                let split = (0..=m).map(|k| exact::count_k_empty_sections(m, l, k).unwrap()).sum::<BigNat>();
                out.equal(&format!("empty-section partition {at}"), split, r);
            }
        }
    }
    out
}

fn series() -> Outcome {
    let mut out = Outcome::new();
    for l in 0..=30 {
        let exact = BigInt::from(exact::ordered_bell(l));
        let v = gross_series_r(l, 0.25, 512).unwrap();
        out.equal(&format!("gross l={l}"), v.rounded(), exact.clone());
        out.expect(v.contains_integer(&exact), || format!("gross l={l}: interval misses the exact value"));
    }
    for m in 1..=4 {
        for l in 0..=12 {
            let exact = BigInt::from(exact::r_via_recurrence(m, l).unwrap());
            let v = gross_series_barred(m, l, 0.25, 512).unwrap();
            out.equal(&format!("gross barred (m={m}, l={l})"), v.rounded(), exact.clone());
            out.expect(v.contains_integer(&exact), || format!("gross barred (m={m}, l={l}): interval misses"));
        }
    }
    for l in 1..=20 {
        let exact = BigInt::from(exact::ordered_bell(l));
        let v = convergent_series_r(l, 50, 256).unwrap();
        out.expect(v.contains_integer(&exact), || format!("convergent l={l} K=50: interval misses"));
        out.equal(&format!("convergent l={l} K=50"), v.rounded(), exact);
    }
    for l in [2, 5, 8, 12] {
        let exact = BigRational::from_integer(BigInt::from(exact::ordered_bell(l)));
        for k in [0, 1, 2, 5, 10] {
            let v = convergent_series_r(l, k, 256).unwrap();
            out.expect(v.contains(&exact), || format!("convergent l={l} K={k}: interval misses"));
            let err = (&v.value - &exact).abs();
            let first = first_omitted_term(l, k, 256).unwrap().upper();
            let bound = &first * BigRational::from_integer(3.into());
            out.expect(err <= bound, || format!("truncation l={l} K={k}: error {} > 3 x {}", to_f(&err), to_f(&first)));
        }
    }
    let exact = BigInt::from(exact::ordered_bell(25));
    let ratio = asymptotic_ratio(25, &exact, 256).unwrap();
    let dev = (ratio.to_f64() - 1.0).abs() + ratio.error_f64();
    out.expect(dev <= 1e-8, || format!("asymptotic ratio at l=25 deviates by {dev:e}"));
    out.notes.push(format!("asymptotic ratio at l=25: |ratio - 1| <= {dev:.3e}"));
    let constants: Vec<String> = [2, 5, 10, 20, 25]
        .iter()
        .map(|&l| format!("l={l}: {:.4}", asymptotic_error_constant(l, 128).unwrap()))
        .collect();
    out.notes.push(format!("observed leading-term error constant C: {}", constants.join(", ")));
    out
}

fn to_f(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("1 table reproduction", table_reproduction, Duration::from_secs(1)),
        ("2 oracle equivalence", oracle_equivalence, Duration::from_secs(30)),
        ("3 bijection f", bijection_f, Duration::from_secs(60)),
        ("4 bijection g", bijection_g, Duration::from_secs(60)),
        ("5 special-arrangement identities", special_identities, Duration::from_secs(60)),
        ("6 series", series, Duration::from_secs(10)),
    ];
    let mut all_ok = true;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.failures.is_empty();
        all_ok &= ok;
        // Time budgets refer to optimized builds; debug timings are shown for information.
        let over = if elapsed > budget { format!(" (budget {budget:?})") } else { String::new() };
        println!(
            "{} criterion {name}: {} checks in {:.2?}{over}",
            if ok { "PASS" } else { "FAIL" },
            outcome.checked,
            elapsed
        );
        for note in &outcome.notes {
            println!("    note: {note}");
        }
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
