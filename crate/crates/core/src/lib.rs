//! Exact counting, enumeration, bijections, generating functions and
//! convergent series for barred preferential arrangements.
//!
//! A preferential arrangement of `1..=l` is a ranking with ties allowed, i.e.
//! an ordered set partition. A barred arrangement additionally places `m`
//! bars between (never inside) its blocks, splitting it into `m + 1`
//! sections. `r(m, l)` counts barred arrangements; `s(m, l)` counts those
//! whose sections are all nonempty.
//!
//! - [`exact`]: big-integer formulas, each sequence by several routes;
//! - [`table`]: a memo table that cross-checks every write;
//! - [`arrangement`] and [`enumerate`]: the objects, their text form, and
//!   ordered brute-force enumeration;
//! - [`bijection`]: the bar-removal maps and their inverses;
//! - [`series`]: exact truncated power series for the generating functions;
//! - [`interval`] and [`asymptotics`]: certified arbitrary-precision
//!   evaluation of the infinite series;
//! - [`verify`]: sweeps that run every identity and report mismatches.

pub mod arrangement;
pub mod asymptotics;
pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod interval;
pub mod series;
pub mod table;
pub mod verify;

pub use arrangement::{BarredPA, PreferentialArrangement};
pub use asymptotics::ApproxValue;
pub use bijection::{CyclePermutation, FOutput, LabeledBpa};
pub use error::{Error, Result};
pub use exact::BigNat;
pub use interval::Interval;
pub use series::ExactSeries;
pub use table::{Method, SequenceKind, SequenceTable};
pub use verify::{Check, CheckStatus, Report};
