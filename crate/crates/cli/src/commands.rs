//! Subcommand implementations. Each returns the text to print and an exit
//! status, so they can be driven from tests without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use bpa_core::asymptotics::{
    asymptotic_error_constant, asymptotic_leading, asymptotic_ratio, convergent_series_barred_traced,
    convergent_series_r_traced, gross_series_barred_traced, gross_series_r_traced, SeriesEvaluation,
};
use bpa_core::enumerate::{enumerate_bpa, enumerate_pa, enumerate_special};
use bpa_core::table::evaluate;
use bpa_core::verify::{verify_bijections, verify_identities, verify_oracle};
use bpa_core::{exact, BigNat, Method, SequenceKind};

use crate::cache::CacheFile;
use crate::UsageError;

/// Enumerations larger than this need `--force` or a `--limit` at most this.
pub const ENUMERATION_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, code: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub kind: SequenceKind,
    pub m: usize,
    pub l: usize,
    pub value: String,
    pub method: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_method(kind: SequenceKind, name: &str) -> Result<Option<Method>> {
    if name == "all" {
        return Ok(None);
    }
    let method = Method::from_name(name).ok_or_else(|| usage(format!("unknown method {name:?}")))?;
    if matches!(method, Method::Enumeration | Method::Cache) {
        return Err(usage(format!("method {name} is not a formula")));
    }
    if kind == SequenceKind::S && method == Method::FromS
        || kind == SequenceKind::R && matches!(method, Method::InclusionExclusion | Method::FirstBlocks)
    {
        return Err(usage(format!("method {name} does not apply to {kind}")));
    }
    Ok(Some(method))
}

fn timed(kind: SequenceKind, method: Method, m: usize, l: usize) -> Result<OutputRecord> {
    let start = Instant::now();
    let value = evaluate(kind, method, m, l)?;
    Ok(OutputRecord { kind, m, l, value: value.to_string(), method: method.name().into(), elapsed: start.elapsed() })
}

pub fn compute(
    kind: SequenceKind,
    m: usize,
    l: usize,
    method: &str,
    format: Format,
    cache: Option<&Path>,
) -> Result<Outcome> {
    let method = parse_method(kind, method)?;
    let mut store = cache.map(CacheFile::load).transpose()?;
    let mut records = Vec::new();
    match method {
        Some(method) => match store.as_ref().and_then(|c| c.get(kind, m, l)) {
            Some(v) => records.push(OutputRecord {
                kind,
                m,
                l,
                value: v.to_string(),
                method: Method::Cache.name().into(),
                elapsed: Duration::ZERO,
            }),
            None => records.push(timed(kind, method, m, l)?),
        },
        None => {
            for &method in Method::exact_methods(kind) {
                records.push(timed(kind, method, m, l)?);
            }
        }
    }
    let agree = records.windows(2).all(|w| w[0].value == w[1].value);
    if let (Some(store), Some(path)) = (store.as_mut(), cache) {
        if agree {
            store.insert(kind, m, l, records[0].value.parse()?)?;
            store.save(path)?;
        }
    }

    let verdict = if agree { "OK" } else { "MISMATCH" };
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut body = json!({ "records": records });
            if method.is_none() {
                body["verdict"] = json!(verdict);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
        }
        Format::Csv => {
            writeln!(out, "kind,m,l,value,method")?;
            for r in &records {
                writeln!(out, "{},{},{},{},{}", r.kind, r.m, r.l, r.value, r.method)?;
            }
            if method.is_none() {
                writeln!(out, "verdict,{verdict}")?;
            }
        }
        Format::Plain => {
            for r in &records {
                writeln!(out, "{}({},{}) = {}  [{}, {:.1?}]", r.kind, r.m, r.l, r.value, r.method, r.elapsed)?;
            }
            if method.is_none() {
                writeln!(out, "verdict: {verdict}")?;
            }
        }
    }
    Ok(Outcome { output: out, code: if agree { 0 } else { 1 } })
}

/// Grid of values, one row per bar count, rows computed on worker threads.
pub fn grid(kind: SequenceKind, m_max: usize, l_max: usize) -> Result<Vec<Vec<BigNat>>> {
    let method = Method::exact_methods(kind)[0];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=m_max)
            .map(|m| {
                scope.spawn(move || {
                    (0..=l_max).map(|l| evaluate(kind, method, m, l)).collect::<bpa_core::Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked").map_err(Into::into)).collect()
    })
}

pub fn table(kind: SequenceKind, m_max: usize, l_max: usize, format: Format) -> Result<Outcome> {
    let rows = grid(kind, m_max, l_max)?;
    let mut out = String::new();
    match format {
        Format::Plain => {
            let width =
                rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1).max(l_max.to_string().len());
            let label = "m\\l";
            let head = label.len().max(m_max.to_string().len());
            write!(out, "{label:<head$}")?;
            for l in 0..=l_max {
                write!(out, " {l:>width$}")?;
            }
            out.push('\n');
            for (m, row) in rows.iter().enumerate() {
                write!(out, "{m:<head$}")?;
                for v in row {
                    write!(out, " {:>width$}", v.to_string())?;
                }
                out.push('\n');
            }
        }
        Format::Csv => {
            let header: Vec<String> =
                std::iter::once("m".to_string()).chain((0..=l_max).map(|l| l.to_string())).collect();
            writeln!(out, "{}", header.join(","))?;
            for (m, row) in rows.iter().enumerate() {
                let cells: Vec<String> =
                    std::iter::once(m.to_string()).chain(row.iter().map(|v| v.to_string())).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            let values: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
            let body = json!({ "kind": kind, "m_max": m_max, "l_max": l_max, "values": values });
            writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EnumKind {
    Pa,
    Bpa,
    Special,
}

pub fn enumerate(kind: EnumKind, args: &[usize], limit: Option<u64>, force: bool) -> Result<Outcome> {
    let (m, l) = match (kind, args) {
        (EnumKind::Pa, [l]) => (0, *l),
        (EnumKind::Pa, _) => return Err(usage("enumerate pa takes one argument: l")),
        (_, [m, l]) => (*m, *l),
        _ => return Err(usage("enumerate bpa|special takes two arguments: m l")),
    };
    let predicted = match kind {
        EnumKind::Pa | EnumKind::Bpa => exact::r_via_recurrence(m, l)?,
        EnumKind::Special => exact::s_via_blocks(m, l),
    };
    let guard = BigNat::from(ENUMERATION_GUARD);
    let bounded = limit.is_some_and(|k| k <= ENUMERATION_GUARD);
    if predicted > guard && !force && !bounded {
        return Err(usage(format!(
            "refusing to list {predicted} arrangements (more than {ENUMERATION_GUARD}); pass --force or --limit"
        )));
    }
    let take = limit.map_or(usize::MAX, |k| usize::try_from(k).unwrap_or(usize::MAX));
    let mut out = String::new();
    match kind {
        EnumKind::Pa => enumerate_pa(l).take(take).for_each(|x| out.push_str(&format!("{}\n", x.render()))),
        EnumKind::Bpa => enumerate_bpa(m, l).take(take).for_each(|x| out.push_str(&format!("{}\n", x.render()))),
        EnumKind::Special => {
            enumerate_special(m, l).take(take).for_each(|x| out.push_str(&format!("{}\n", x.render())))
        }
    }
    writeln!(out, "total {predicted}")?;
    Ok(Outcome::ok(out))
}

pub fn verify(m_max: usize, l_max: usize, oracle: bool, bijections: bool, format: Format) -> Result<Outcome> {
    let mut report = verify_identities(m_max, l_max);
    if oracle {
        report.extend(verify_oracle(m_max, l_max));
    }
    if bijections {
        report.extend(verify_bijections(m_max, l_max));
    }
    let output = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        Format::Csv => {
            let mut s = String::from("name,range,status\n");
            for c in &report.checks {
                writeln!(s, "{},\"{}\",{}", c.name, c.range, c.status)?;
            }
            s
        }
        Format::Plain => format!("{report}\n"),
    };
    Ok(Outcome { output, code: if report.passed() { 0 } else { 1 } })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesKind {
    Gross,
    Asymp,
    Convergent,
}

#[derive(Debug, Clone)]
pub struct SeriesArgs {
    pub kind: SeriesKind,
    pub m: Option<usize>,
    pub l: usize,
    pub terms: usize,
    pub bits: u32,
    pub eps: f64,
    pub trace: bool,
    pub format: Format,
}

pub fn series(args: &SeriesArgs) -> Result<Outcome> {
    let SeriesArgs { kind, m, l, terms, bits, eps, trace, format } = args.clone();
    if bits == 0 {
        return Err(usage("--bits must be positive"));
    }
    let exact_value = BigInt::from(match m {
        Some(m) => exact::r_via_recurrence(m, l)?,
        None => exact::ordered_bell(l),
    });
    let digits = 12;
    let mut fields: Vec<(String, String)> = vec![
        ("series".into(), format!("{kind:?}").to_lowercase()),
        ("m".into(), m.map_or("-".into(), |m| m.to_string())),
        ("l".into(), l.to_string()),
        ("bits".into(), bits.to_string()),
    ];
    let eval: SeriesEvaluation = match kind {
        SeriesKind::Gross => {
            fields.push(("eps".into(), format!("{eps:e}")));
            match m {
                Some(m) => gross_series_barred_traced(m, l, eps, bits),
                None => gross_series_r_traced(l, eps, bits),
            }
            .map_err(core_error)?
        }
        SeriesKind::Convergent => {
            fields.push(("terms".into(), terms.to_string()));
            match m {
                Some(m) => convergent_series_barred_traced(m, l, terms, bits),
                None => convergent_series_r_traced(l, terms, bits),
            }
            .map_err(core_error)?
        }
        SeriesKind::Asymp => {
            if m.is_some() {
                return Err(usage("series asymp takes a single argument l"));
            }
            let v = asymptotic_leading(l, bits).map_err(core_error)?;
            let ratio = asymptotic_ratio(l, &exact_value, bits).map_err(core_error)?;
            let constant = asymptotic_error_constant(l, bits).map_err(core_error)?;
            fields.push(("value".into(), v.to_decimal(digits)));
            fields.push(("error_bound".into(), format!("{:.3e}", v.error_f64())));
            fields.push(("exact".into(), exact_value.to_string()));
            fields.push(("ratio_exact_to_leading".into(), ratio.to_decimal(20)));
            fields.push(("error_constant".into(), format!("{constant:.6}")));
            return render_series(fields, Vec::new(), format);
        }
    };
    let v = &eval.value;
    fields.push(("value".into(), v.to_decimal(digits)));
    fields.push(("error_bound".into(), format!("{:.3e}", v.error_f64())));
    fields.push(("tail_bound".into(), format!("{:.3e}", rational_f64(&eval.tail_bound))));
    fields.push(("exact".into(), exact_value.to_string()));
    fields.push(("rounds_to_exact".into(), (v.rounded() == exact_value).to_string()));
    let trace_rows = if trace { eval.terms.iter().map(|t| (t.index, t.value)).collect() } else { Vec::new() };
    render_series(fields, trace_rows, format)
}

fn rational_f64(q: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::INFINITY)
}

fn core_error(e: bpa_core::Error) -> anyhow::Error {
    match e {
        bpa_core::Error::InvalidArgument(msg) => usage(msg),
        other => other.into(),
    }
}

fn render_series(fields: Vec<(String, String)>, trace: Vec<(usize, f64)>, format: Format) -> Result<Outcome> {
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut body = serde_json::Map::new();
            for (k, v) in &fields {
                body.insert(k.clone(), json!(v));
            }
            if !trace.is_empty() {
                body.insert(
                    "terms".into(),
                    json!(trace.iter().map(|(k, v)| json!({"k": k, "value": v})).collect::<Vec<_>>()),
                );
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
        }
        Format::Csv => {
            writeln!(out, "field,value")?;
            for (k, v) in &fields {
                writeln!(out, "{k},{v}")?;
            }
            for (k, v) in &trace {
                writeln!(out, "term_{k},{v:e}")?;
            }
        }
        Format::Plain => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &fields {
                writeln!(out, "{k:<width$}  {v}")?;
            }
            if !trace.is_empty() {
                writeln!(out, "terms:")?;
                for (k, v) in &trace {
                    writeln!(out, "  {k:>6}  {v:e}")?;
                }
            }
        }
    }
    Ok(Outcome::ok(out))
}

/// b-file lines `n a(n)` for `n = 0..=l_max`.
pub fn bfile_text(kind: SequenceKind, m: usize, l_max: usize) -> Result<String> {
    let rows = grid_row(kind, m, l_max)?;
    Ok(rows.iter().enumerate().map(|(n, v)| format!("{n} {v}\n")).collect())
}

fn grid_row(kind: SequenceKind, m: usize, l_max: usize) -> Result<Vec<BigNat>> {
    let method = Method::exact_methods(kind)[0];
    (0..=l_max).map(|l| evaluate(kind, method, m, l).map_err(Into::into)).collect()
}

pub fn bfile(kind: SequenceKind, m: usize, l_max: usize, path: &Path) -> Result<Outcome> {
    let text = bfile_text(kind, m, l_max)?;
    fs::write(path, &text).with_context(|| format!("writing b-file {}", path.display()))?;
    Ok(Outcome::ok(format!("wrote {} lines to {}\n", l_max + 1, path.display())))
}
