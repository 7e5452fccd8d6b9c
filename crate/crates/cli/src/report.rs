//! Deterministic reports, rendered as indented text or JSON.

use std::fmt::Write as _;

use cellcut_core::complex::CellComplex;
use cellcut_core::cutflow::FacetVector;
use cellcut_core::exact::FiniteAbelianGroup;
use cellcut_core::BigInt;
use serde_json::{Map, Value};

use crate::document::{int_to_json, to_json_text};

/// A result value. Field order is insertion order everywhere.
#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Int(BigInt),
    Count(usize),
    Bool(bool),
    Text(String),
    Labels(Vec<String>),
    Group(FiniteAbelianGroup),
    /// Facet label to coefficient, in facet order.
    Vector(Vec<(String, BigInt)>),
    List(Vec<Item>),
    Record(Vec<(String, Item)>),
    None,
}

impl Item {
    pub fn int(x: impl Into<BigInt>) -> Self {
        Item::Int(x.into())
    }

    pub fn vector(c: &CellComplex, v: &FacetVector) -> Self {
        Item::Vector(c.facets().iter().cloned().zip(v.coefficients.iter().cloned()).collect())
    }

    pub fn labels(names: &[String], indices: &[usize]) -> Self {
        Item::Labels(indices.iter().map(|&i| names[i].clone()).collect())
    }

    pub fn record<const N: usize>(fields: [(&str, Item); N]) -> Self {
        Item::Record(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Item::Int(x) => int_to_json(x),
            Item::Count(n) => Value::from(*n),
            Item::Bool(b) => Value::Bool(*b),
            Item::Text(s) => Value::String(s.clone()),
            Item::Labels(l) => Value::from(l.clone()),
            Item::Group(g) => {
                let mut m = Map::new();
                m.insert("free_rank".into(), Value::from(g.free_rank()));
                m.insert(
                    "invariant_factors".into(),
                    Value::Array(g.invariant_factors().iter().map(int_to_json).collect()),
                );
                m.insert("order".into(), g.order().map_or(Value::Null, |o| int_to_json(&o)));
                m.insert("display".into(), Value::String(g.to_string()));
                Value::Object(m)
            }
            Item::Vector(entries) => Value::Object(entries.iter().map(|(k, v)| (k.clone(), int_to_json(v))).collect()),
            Item::List(items) => Value::Array(items.iter().map(Item::to_json).collect()),
            Item::Record(fields) => Value::Object(fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
            Item::None => Value::Null,
        }
    }

    /// Single-line text, or `None` when the item needs nested lines.
    fn inline(&self) -> Option<String> {
        Some(match self {
            Item::Int(x) => x.to_string(),
            Item::Count(n) => n.to_string(),
            Item::Bool(b) => b.to_string(),
            Item::Text(s) => s.clone(),
            Item::Labels(l) => format!("{{{}}}", l.join(", ")),
            Item::Group(g) => g.to_string(),
            Item::Vector(entries) => {
                let parts: Vec<String> = entries.iter().map(|(k, v)| format!("{}: {}", k, v)).collect();
                format!("({})", parts.join(", "))
            }
            Item::None => "none".into(),
            Item::List(items) if items.iter().all(|i| matches!(i, Item::Int(_) | Item::Count(_) | Item::Bool(_))) => {
                let parts: Vec<String> = items.iter().filter_map(Item::inline).collect();
                format!("[{}]", parts.join(", "))
            }
            Item::List(_) | Item::Record(_) => return None,
        })
    }

    fn write_text(&self, out: &mut String, key: &str, indent: usize) {
        let pad = "  ".repeat(indent);
        if let Some(line) = self.inline() {
            let _ = writeln!(out, "{}{}: {}", pad, key, line);
            return;
        }
        let _ = writeln!(out, "{}{}:", pad, key);
        match self {
            Item::List(items) => {
                for (i, item) in items.iter().enumerate() {
                    item.write_text(out, &format!("[{}]", i), indent + 1);
                }
            }
            Item::Record(fields) => {
                for (k, v) in fields {
                    v.write_text(out, k, indent + 1);
                }
            }
            _ => unreachable!(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub outcome: Outcome,
    pub note: Option<String>,
}

impl CheckRow {
    pub fn compare(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let outcome = if lhs == rhs { Outcome::Pass } else { Outcome::Fail };
        CheckRow { name: name.into(), lhs, rhs, outcome, note: None }
    }

    pub fn with(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString, pass: bool) -> Self {
        let outcome = if pass { Outcome::Pass } else { Outcome::Fail };
        CheckRow { name: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), outcome, note: None }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckRow {
            name: name.into(),
            lhs: String::new(),
            rhs: String::new(),
            outcome: Outcome::Skipped,
            note: Some(why.into()),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub digest: Vec<(String, Item)>,
    pub results: Vec<(String, Item)>,
    pub checks: Vec<CheckRow>,
}

impl Report {
    pub fn new(command: &str, c: Option<&CellComplex>) -> Self {
        Report {
            command: command.to_string(),
            digest: c.map(digest).unwrap_or_default(),
            results: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, item: Item) {
        self.results.push((key.to_string(), item));
    }

    pub fn get(&self, key: &str) -> Option<&Item> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Fail)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        if !self.digest.is_empty() {
            m.insert("complex".into(), Item::Record(self.digest.clone()).to_json());
        }
        m.insert("results".into(), Item::Record(self.results.clone()).to_json());
        if !self.checks.is_empty() {
            let rows = self
                .checks
                .iter()
                .map(|c| {
                    let mut r = Map::new();
                    r.insert("name".into(), Value::String(c.name.clone()));
                    r.insert("lhs".into(), Value::String(c.lhs.clone()));
                    r.insert("rhs".into(), Value::String(c.rhs.clone()));
                    r.insert("pass".into(), Value::Bool(c.outcome != Outcome::Fail));
                    r.insert("status".into(), Value::String(c.outcome.as_str().into()));
                    if let Some(n) = &c.note {
                        r.insert("note".into(), Value::String(n.clone()));
                    }
                    Value::Object(r)
                })
                .collect();
            m.insert("checks".into(), Value::Array(rows));
        }
        Value::Object(m)
    }

    pub fn render_json(&self) -> String {
        to_json_text(&self.to_json())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if !self.digest.is_empty() {
            Item::Record(self.digest.clone()).write_text(&mut out, "complex", 0);
        }
        if !self.results.is_empty() {
            Item::Record(self.results.clone()).write_text(&mut out, "results", 0);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            for c in &self.checks {
                let status = match c.outcome {
                    Outcome::Pass => "PASS",
                    Outcome::Fail => "FAIL",
                    Outcome::Skipped => "SKIP",
                };
                let pad = width - c.name.chars().count();
                let _ = write!(out, "  {} {}{}", status, c.name, " ".repeat(pad));
                if c.outcome != Outcome::Skipped {
                    let _ = write!(out, "  {} | {}", c.lhs, c.rhs);
                }
                if let Some(n) = &c.note {
                    let _ = write!(out, "  ({})", n);
                }
                out.push('\n');
            }
            let failed = self.checks.iter().filter(|c| c.outcome == Outcome::Fail).count();
            let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        }
        out
    }
}

/// Cell counts per dimension and ranks of the boundary maps.
pub fn digest(c: &CellComplex) -> Vec<(String, Item)> {
    let counts = (0..=c.dim()).map(|i| Item::Count(c.num_cells(i))).collect();
    let ranks = (0..=c.dim()).map(|i| Item::Count(c.boundary(i).rank())).collect();
    vec![
        ("dimension".into(), Item::Count(c.dim())),
        ("augmented".into(), Item::Bool(c.is_augmented())),
        ("cells".into(), Item::List(counts)),
        ("boundary_ranks".into(), Item::List(ranks)),
    ]
}
