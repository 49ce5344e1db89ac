//! Report records and their JSON, CSV and text renderings.
//!
//! Every JSON record is a single line carrying `"schema": "maxclass-units/1"`. Counts are
//! emitted as exact JSON integers, also when they exceed 64 bits. Apart from
//! `elapsed_ms`, output depends only on the inputs.

use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Number;

use maxclass_core::{CensusReport, EnumeratedSubgroup};

use crate::verify::{Check, VerifyReport};

pub const SCHEMA: &str = "maxclass-units/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A report that can be written in every [`Format`].
pub trait Record: Serialize {
    fn csv_header(&self) -> &'static [&'static str];
    fn csv_rows(&self) -> Vec<Vec<String>>;
    fn text_lines(&self) -> Vec<String>;
}

pub fn emit<R: Record>(record: &R, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, record)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(record.csv_header())?;
            for row in record.csv_rows() {
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for line in record.text_lines() {
                writeln!(out, "{line}")?;
            }
        }
    }
    out.flush()
}

/// An exact JSON integer from any decimal rendering.
fn number(v: impl Display) -> Number {
    v.to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers")
}

fn opt_string(v: &Option<Number>) -> String {
    v.as_ref().map_or_else(String::new, Number::to_string)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaRecord {
    pub schema: &'static str,
    pub family: &'static str,
    pub n: u32,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_source: Option<&'static str>,
    pub type1: Option<Number>,
    pub type2: Option<Number>,
    pub total: Option<Number>,
    pub involutions: Option<Number>,
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
}

impl From<&CensusReport> for ThetaRecord {
    fn from(r: &CensusReport) -> Self {
        let counts = r.counts.as_ref();
        Self {
            schema: SCHEMA,
            family: r.family.label(),
            n: r.n,
            method: r.method.name(),
            order_source: r.order_source.map(|s| s.name()),
            type1: counts.map(|c| number(&c.type1)),
            type2: counts.map(|c| number(&c.type2)),
            total: r.total().map(number),
            involutions: r.involutions().map(number),
            elapsed_ms: r.elapsed_ms,
            budget_exhausted: r.budget_exhausted,
        }
    }
}

impl Record for ThetaRecord {
    fn csv_header(&self) -> &'static [&'static str] {
        &[
            "family",
            "n",
            "method",
            "type1",
            "type2",
            "total",
            "involutions",
            "elapsed_ms",
            "budget_exhausted",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let method = match self.order_source {
            Some(src) => format!("{}:{src}", self.method),
            None => self.method.to_string(),
        };
        vec![vec![
            self.family.to_string(),
            self.n.to_string(),
            method,
            opt_string(&self.type1),
            opt_string(&self.type2),
            opt_string(&self.total),
            opt_string(&self.involutions),
            self.elapsed_ms.to_string(),
            self.budget_exhausted.to_string(),
        ]]
    }

    fn text_lines(&self) -> Vec<String> {
        let method = match self.order_source {
            Some(src) => format!("{} ({src} orders)", self.method),
            None => self.method.to_string(),
        };
        let head = format!("{} n={} {method}", self.family, self.n);
        let line = match &self.total {
            Some(total) => format!(
                "{head}: total {total} (type1 {}, type2 {}), involutions {}, {} ms",
                opt_string(&self.type1),
                opt_string(&self.type2),
                opt_string(&self.involutions),
                self.elapsed_ms
            ),
            None => format!("{head}: budget exhausted after {} ms", self.elapsed_ms),
        };
        vec![line]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRecord {
    pub schema: &'static str,
    pub spec: String,
    pub n: u32,
    pub order: Number,
    pub empty: bool,
    pub elapsed_ms: u64,
}

impl CensusRecord {
    pub fn from_order(spec: String, n: u32, order: u128, elapsed_ms: u64) -> Self {
        Self {
            schema: SCHEMA,
            spec,
            n,
            order: number(order),
            empty: order == 0,
            elapsed_ms,
        }
    }

    pub fn from_subgroup(s: &EnumeratedSubgroup, elapsed_ms: u64) -> Self {
        Self::from_order(s.spec().to_string(), s.n(), s.order(), elapsed_ms)
    }
}

impl Record for CensusRecord {
    fn csv_header(&self) -> &'static [&'static str] {
        &["spec", "n", "order", "empty", "elapsed_ms"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.spec.clone(),
            self.n.to_string(),
            self.order.to_string(),
            self.empty.to_string(),
            self.elapsed_ms.to_string(),
        ]]
    }

    fn text_lines(&self) -> Vec<String> {
        let what = if self.empty {
            "empty".to_string()
        } else {
            format!("order {}", self.order)
        };
        vec![format!(
            "{} n={}: {what}, {} ms",
            self.spec, self.n, self.elapsed_ms
        )]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub check: String,
    pub n: u32,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        Self {
            suite: c.suite.name(),
            check: c.name.clone(),
            n: c.n,
            expected: c.expected.clone(),
            actual: c.actual.clone(),
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRecord {
    pub schema: &'static str,
    pub suite: &'static str,
    pub n_range: [u32; 2],
    pub seed: u64,
    pub samples: u64,
    pub pass: bool,
    pub budget_exhausted: bool,
    pub elapsed_ms: u64,
    pub checks: Vec<CheckRecord>,
}

impl From<&VerifyReport> for VerifyRecord {
    fn from(r: &VerifyReport) -> Self {
        Self {
            schema: SCHEMA,
            suite: r.suite.name(),
            n_range: [*r.n_range.start(), *r.n_range.end()],
            seed: r.seed,
            samples: r.samples,
            pass: r.pass(),
            budget_exhausted: r.budget_exhausted,
            elapsed_ms: r.elapsed_ms,
            checks: r.checks.iter().map(CheckRecord::from).collect(),
        }
    }
}

impl Record for VerifyRecord {
    fn csv_header(&self) -> &'static [&'static str] {
        &["suite", "check", "n", "expected", "actual", "pass"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.suite.to_string(),
                    c.check.clone(),
                    c.n.to_string(),
                    c.expected.clone(),
                    c.actual.clone(),
                    c.pass.to_string(),
                ]
            })
            .collect()
    }

    fn text_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                if c.pass {
                    format!("{tag} {} n={} {}: {}", c.suite, c.n, c.check, c.actual)
                } else {
                    format!(
                        "{tag} {} n={} {}: expected {}, got {}",
                        c.suite, c.n, c.check, c.expected, c.actual
                    )
                }
            })
            .collect()
    }
}
