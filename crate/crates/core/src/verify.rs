//! Identity sweeps producing a pass/fail report. A sweep never stops at the
//! first mismatch; every failing cell is listed under its check.

use std::fmt;

use serde::Serialize;

use crate::bijection::sweep::{f_sweep, g_sweep};
use crate::enumerate::{enumerate_bpa, enumerate_special};
use crate::error::Result;
use crate::exact::{self, BigNat};
use crate::series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub range: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &str, range: String, failures: Vec<String>) -> Self {
        let status = if failures.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name: name.to_string(), range, status, failures }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub status: CheckStatus,
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

impl Report {
    pub fn new() -> Self {
        Self { checks: Vec::new(), status: CheckStatus::Pass }
    }

    pub fn push(&mut self, check: Check) {
        if check.status == CheckStatus::Fail {
            self.status = CheckStatus::Fail;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&Check, &String)> {
        self.checks.iter().flat_map(|c| c.failures.iter().map(move |f| (c, f)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<4} {:<28} {}", c.status, c.name, c.range)?;
            for msg in c.failures.iter().take(20) {
                writeln!(f, "     - {msg}")?;
            }
            if c.failures.len() > 20 {
                writeln!(f, "     ... {} more", c.failures.len() - 20)?;
            }
        }
        write!(f, "status: {}", if self.passed() { "pass" } else { "fail" })
    }
}

fn grid(m_max: usize, l_max: usize, l_min: usize) -> String {
    format!("m=0..={m_max}, l={l_min}..={l_max}")
}

fn compare(failures: &mut Vec<String>, what: &str, m: usize, l: usize, expected: &BigNat, got: Result<BigNat>) {
    match got {
        Ok(v) if &v == expected => {}
        Ok(v) => failures.push(format!("{what} at (m={m}, l={l}): {v} != {expected}")),
        Err(e) => failures.push(format!("{what} at (m={m}, l={l}): {e}")),
    }
}

/// Cross-checks every counting formula on `0..=m_max x 0..=l_max`.
pub fn verify_identities(m_max: usize, l_max: usize) -> Report {
    let mut report = Report::new();

    let mut r_routes = Vec::new();
    let mut s_routes = Vec::new();
    let mut egf = Vec::new();
    let mut r_from_s = Vec::new();
    let mut partition = Vec::new();
    let mut divisibility = Vec::new();
    for m in 0..=m_max {
        let r_series = series::egf_r(m, l_max);
        let s_series = series::egf_s(m, l_max);
        for l in 0..=l_max {
            let r = match exact::r_via_recurrence(m, l) {
                Ok(v) => v,
                Err(e) => {
                    r_routes.push(format!("recurrence at (m={m}, l={l}): {e}"));
                    continue;
                }
            };
            compare(&mut r_routes, "stirling-first", m, l, &r, exact::r_via_stirling_first(m, l));
            compare(&mut r_routes, "blocks", m, l, &r, Ok(exact::r_via_blocks(m, l)));

            let s = exact::s_via_blocks(m, l);
            compare(&mut s_routes, "inclusion-exclusion", m, l, &s, exact::s_via_inclusion_exclusion(m, l));
            compare(&mut s_routes, "first-blocks", m, l, &s, exact::s_via_first_blocks(m, l));

            match (&r_series, &s_series) {
                (Ok(rs), Ok(ss)) => {
                    compare(&mut egf, "r coefficient", m, l, &r, rs.egf_coefficient(l));
                    compare(&mut egf, "s coefficient", m, l, &s, ss.egf_coefficient(l));
                }
                (Err(e), _) | (_, Err(e)) => egf.push(format!("series for m={m}: {e}")),
            }

            compare(&mut r_from_s, "sum over nonempty sections", m, l, &r, Ok(exact::r_from_s(m, l)));

            // With no elements every section is empty, outside the split's domain.
            if l > 0 {
                let split: Result<BigNat> =
                    (0..=m).try_fold(BigNat::from(0u32), |acc, k| Ok(acc + exact::count_k_empty_sections(m, l, k)?));
                compare(&mut partition, "empty-section split", m, l, &r, split);
            }

            let (num, div) = exact::stirling_first_numerator(m, l);
            if &num % &div != BigNat::from(0u32) {
                divisibility.push(format!("(m={m}, l={l}): {div} does not divide {num}"));
            }
        }
    }
    let range = grid(m_max, l_max, 0);
    report.push(Check::new("r formulas agree", range.clone(), r_routes));
    report.push(Check::new("s formulas agree", range.clone(), s_routes));
    report.push(Check::new("egf coefficients", range.clone(), egf));
    report.push(Check::new("r from s", range.clone(), r_from_s));
    report.push(Check::new("empty-section partition", grid(m_max, l_max, 1), partition));
    report.push(Check::new("stirling divisibility", range, divisibility));

    let mut single_bar = Vec::new();
    let bell = exact::ordered_bell_prefix(l_max + 1);
    for l in 0..=l_max {
        let expected = &bell[l] + &bell[l + 1];
        match exact::r_via_stirling_first(1, l) {
            Ok(v) if v.clone() * 2u32 == expected => {}
            Ok(v) => single_bar.push(format!("l={l}: 2 r(1,l) = {} != {expected}", v * 2u32)),
            Err(e) => single_bar.push(format!("l={l}: {e}")),
        }
    }
    report.push(Check::new("single-bar identity", format!("l=0..={l_max}"), single_bar));

    let triangles = stirling_triangles(m_max + 1);
    report.push(Check::new("stirling recurrences", format!("n=0..={}", m_max + 1), triangles));

    let mut derivative = Vec::new();
    for m in 1..=m_max {
        match series::check_derivative_identity(m, l_max) {
            Ok(true) => {}
            Ok(false) => derivative.push(format!("m={m}: derivative identity fails")),
            Err(e) => derivative.push(format!("m={m}: {e}")),
        }
    }
    report.push(Check::new("egf derivative identity", format!("m=1..={m_max}, order {l_max}"), derivative));
    report
}

fn stirling_triangles(n_max: usize) -> Vec<String> {
    let mut failures = Vec::new();
    let mut prev1 = exact::stirling1_row(0);
    let mut prev2 = exact::stirling2_row(0);
    for n in 1..=n_max {
        let row1 = exact::stirling1_row(n);
        let row2 = exact::stirling2_row(n);
        let at = |row: &[BigNat], k: usize| row.get(k).cloned().unwrap_or_default();
        for k in 0..=n {
            let below = if k == 0 { BigNat::default() } else { at(&prev1, k - 1) };
            if at(&row1, k) != below.clone() + at(&prev1, k) * (n - 1) {
                failures.push(format!("c({n},{k}) breaks its recurrence"));
            }
            let below = if k == 0 { BigNat::default() } else { at(&prev2, k - 1) };
            if at(&row2, k) != at(&prev2, k) * k + below {
                failures.push(format!("S({n},{k}) breaks its recurrence"));
            }
        }
        prev1 = row1;
        prev2 = row2;
    }
    failures
}

/// Compares brute-force enumeration counts with the formulas.
pub fn verify_oracle(m_max: usize, l_max: usize) -> Report {
    let mut report = Report::new();
    let mut all = Vec::new();
    let mut special = Vec::new();
    for m in 0..=m_max {
        for l in 0..=l_max {
            let count = BigNat::from(enumerate_bpa(m, l).count());
            compare(&mut all, "enumeration vs recurrence", m, l, &count, exact::r_via_recurrence(m, l));
            let count = BigNat::from(enumerate_special(m, l).count());
            compare(&mut special, "enumeration vs blocks", m, l, &count, Ok(exact::s_via_blocks(m, l)));
            compare(
                &mut special,
                "enumeration vs inclusion-exclusion",
                m,
                l,
                &count,
                exact::s_via_inclusion_exclusion(m, l),
            );
            compare(&mut special, "enumeration vs first-blocks", m, l, &count, exact::s_via_first_blocks(m, l));
        }
    }
    let range = grid(m_max, l_max, 0);
    report.push(Check::new("enumeration count r", range.clone(), all));
    report.push(Check::new("enumeration count s", range, special));
    report
}

/// Exhaustive round trips of both bijections.
pub fn verify_bijections(m_max: usize, l_max: usize) -> Report {
    let mut report = Report::new();
    let mut f_failures = Vec::new();
    for m in 1..=m_max {
        for l in 0..=l_max {
            let s = f_sweep(m, l);
            f_failures.extend(s.failures.into_iter().map(|e| format!("(m={m}, l={l}): {e}")));
        }
    }
    report.push(Check::new("bijection f round trip", format!("m=1..={m_max}, l=0..={l_max}"), f_failures));
    let mut g_failures = Vec::new();
    for m in 0..=m_max {
        for l in 0..=l_max {
            let s = g_sweep(m, l);
            g_failures.extend(s.failures.into_iter().map(|e| format!("(m={m}, l={l}): {e}")));
        }
    }
    report.push(Check::new("bijection g round trip", grid(m_max, l_max, 0), g_failures));
    report
}
