//! Canonical JSON documents.
//!
//! A distribution document lists one entry per outcome as the outcome's
//! coordinates followed by its probability as a `"num/den"` string:
//!
//! ```text
//! {
//!   "kind": "occupancy",
//!   "n": 2,
//!   "r": 2,
//!   "entries": [
//!     [0, 2, "1/3"],
//!     ...
//!   ]
//! }
//! ```
//!
//! `kind` is one of `occupancy`, `labels`, `order_statistics` or `marginal`
//! and may be omitted on input, in which case `occupancy` is assumed. The
//! writer emits entries in the table's canonical order and is byte-stable.

use std::fmt::Write as _;

use serde_json::Value;

use crate::comb::{Composition, LabelVector};
use crate::eom::{BuiltinWeight, LabelDistribution, OccupancyDistribution, OrderStatisticsDistribution, WeightFunction};
use crate::error::{Error, Result};
use crate::process::{build_process, FiniteProcess};
use crate::rational::{format_rational, parse_rational, Rational};

fn render<'a>(
    kind: &str,
    header: &[(&str, String)],
    entries: impl IntoIterator<Item = (&'a [usize], &'a Rational)>,
) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"kind\": \"{kind}\",");
    for (key, value) in header {
        let _ = writeln!(out, "  \"{key}\": {value},");
    }
    let rows: Vec<String> = entries
        .into_iter()
        .map(|(coords, p)| {
            let mut cells: Vec<String> = coords.iter().map(usize::to_string).collect();
            cells.push(format!("\"{}\"", format_rational(p)));
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    if rows.is_empty() {
        out.push_str("  \"entries\": []\n}\n");
    } else {
        let _ = write!(out, "  \"entries\": [\n{}\n  ]\n}}\n", rows.join(",\n"));
    }
    out
}

pub fn occupancy_document(d: &OccupancyDistribution) -> String {
    render(
        "occupancy",
        &[("n", d.cells().to_string()), ("r", d.particles().to_string())],
        d.iter().map(|(x, p)| (x.counts(), p)),
    )
}

/// The compositions of `A_{n,r}` in canonical order, without probabilities.
pub fn compositions_document(n: usize, r: usize, compositions: &[Composition]) -> String {
    let mut out = format!("{{\n  \"kind\": \"compositions\",\n  \"n\": {n},\n  \"r\": {r},\n  \"count\": {},\n", compositions.len());
    let rows: Vec<String> = compositions
        .iter()
        .map(|x| format!("    [{}]", x.counts().iter().map(usize::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    let _ = write!(out, "  \"entries\": [\n{}\n  ]\n}}\n", rows.join(",\n"));
    out
}

pub fn label_document(ld: &LabelDistribution) -> String {
    render(
        "labels",
        &[("n", ld.cells().to_string()), ("r", ld.len().to_string())],
        ld.iter().map(|(y, p)| (y.labels(), p)),
    )
}

pub fn order_statistics_document(n: usize, r: usize, law: &OrderStatisticsDistribution) -> String {
    render("order_statistics", &[("n", n.to_string()), ("r", r.to_string())], law.iter().map(|(u, p)| (u.labels(), p)))
}

/// Law of the label coordinates `coordinates` (1-based) of an `r`-label vector.
pub fn marginal_document(r: usize, coordinates: &[usize], marginal: &LabelDistribution) -> String {
    let coords = format!("[{}]", coordinates.iter().map(usize::to_string).collect::<Vec<_>>().join(", "));
    render(
        "marginal",
        &[("n", marginal.cells().to_string()), ("r", r.to_string()), ("coordinates", coords)],
        marginal.iter().map(|(y, p)| (y.labels(), p)),
    )
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDocument(msg.into())
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

fn usize_field(obj: &Value, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| malformed(format!("missing or non-integer field \"{key}\"")))
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_u64() => Ok(crate::rational::int(n.as_u64().expect("checked"))),
        _ => Err(malformed(format!("expected a rational string, found {v}"))),
    }
}

fn entries(obj: &Value, width: usize) -> Result<Vec<(Vec<usize>, Rational)>> {
    let list = obj.get("entries").and_then(Value::as_array).ok_or_else(|| malformed("missing \"entries\" array"))?;
    list.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| malformed("entry is not an array"))?;
            if row.len() != width + 1 {
                return Err(malformed(format!("entry has {} fields, expected {}", row.len(), width + 1)));
            }
            let coords = row[..width]
                .iter()
                .map(|c| c.as_u64().map(|v| v as usize).ok_or_else(|| malformed(format!("bad coordinate {c}"))))
                .collect::<Result<Vec<_>>>()?;
            Ok((coords, rational_value(&row[width])?))
        })
        .collect()
}

fn check_kind(obj: &Value, expected: &str) -> Result<()> {
    match obj.get("kind").map(|k| k.as_str()) {
        None => Ok(()),
        Some(Some(k)) if k == expected => Ok(()),
        Some(other) => Err(malformed(format!("expected a {expected} document, found kind {other:?}"))),
    }
}

/// Parses an occupancy document. Outcomes not listed have probability zero;
/// listed probabilities must sum to exactly 1.
pub fn parse_occupancy(text: &str) -> Result<OccupancyDistribution> {
    let obj = parse_value(text)?;
    check_kind(&obj, "occupancy")?;
    let n = usize_field(&obj, "n")?;
    let r = usize_field(&obj, "r")?;
    let rows = entries(&obj, n)?.into_iter().map(|(c, p)| Ok((Composition::new(c)?, p))).collect::<Result<Vec<_>>>()?;
    let mut listed = std::collections::BTreeMap::new();
    for (x, p) in rows {
        if listed.insert(x.clone(), p).is_some() {
            return Err(malformed(format!("duplicate entry {x}")));
        }
    }
    let all = crate::comb::enumerate_compositions(n, r)?;
    let mut table = Vec::with_capacity(all.len());
    for x in all {
        let p = listed.remove(&x).unwrap_or_default();
        table.push((x, p));
    }
    if let Some((x, _)) = listed.into_iter().next() {
        return Err(malformed(format!("entry {x} is not a composition of {r} into {n} parts")));
    }
    OccupancyDistribution::new(n, r, table)
}

/// Parses a label document (every label vector must be listed).
pub fn parse_labels(text: &str) -> Result<LabelDistribution> {
    let obj = parse_value(text)?;
    check_kind(&obj, "labels")?;
    let n = usize_field(&obj, "n")?;
    let r = usize_field(&obj, "r")?;
    let rows =
        entries(&obj, r)?.into_iter().map(|(y, p)| Ok((LabelVector::new(n, y)?, p))).collect::<Result<Vec<_>>>()?;
    LabelDistribution::new(n, r, rows)
}

/// A weight given as a builtin name (`mb`, `be`, `fd`, `pc:s`) or a table of
/// rationals `[a(0), a(1), ...]`, sized to cover counts up to `x_max`.
pub fn parse_weight_value(v: &Value, x_max: usize) -> Result<WeightFunction> {
    match v {
        Value::String(name) => Ok(WeightFunction::builtin(name.parse::<BuiltinWeight>()?, x_max)),
        Value::Array(values) => {
            let table = WeightFunction::from_values(values.iter().map(rational_value).collect::<Result<_>>()?)?;
            table.resized(x_max)
        }
        _ => Err(malformed(format!("weight must be a builtin name or a rational table, found {v}"))),
    }
}

/// Parses `{"weight": ...}` or a bare weight value.
pub fn parse_weight_document(text: &str, x_max: usize) -> Result<WeightFunction> {
    let v = parse_value(text)?;
    match v.get("weight") {
        Some(inner) => parse_weight_value(inner, x_max),
        None => parse_weight_value(&v, x_max),
    }
}

pub fn weight_document(a: &WeightFunction) -> String {
    match a.kind() {
        Some(kind) => format!("{{\n  \"weight\": \"{kind}\",\n  \"x_max\": {}\n}}\n", a.x_max()),
        None => {
            let values: Vec<String> = a.values().iter().map(|v| format!("\"{}\"", format_rational(v))).collect();
            format!("{{\n  \"weight\": [{}]\n}}\n", values.join(", "))
        }
    }
}

/// A process specification: `{"weight": ..., "horizon": M, "terminal_law": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessSpec {
    pub weight: WeightFunction,
    pub horizon: usize,
    pub terminal_law: Vec<Rational>,
}

impl ProcessSpec {
    pub fn build(&self) -> Result<FiniteProcess> {
        build_process(&self.weight, self.horizon, self.terminal_law.clone())
    }
}

pub fn parse_process_spec(text: &str) -> Result<ProcessSpec> {
    let obj = parse_value(text)?;
    let horizon = usize_field(&obj, "horizon")?;
    let law = obj
        .get("terminal_law")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing \"terminal_law\" array"))?
        .iter()
        .map(rational_value)
        .collect::<Result<Vec<_>>>()?;
    if law.is_empty() {
        return Err(malformed("empty terminal law"));
    }
    let cap = law.len() - 1;
    let weight = parse_weight_value(obj.get("weight").ok_or_else(|| malformed("missing \"weight\""))?, cap)?;
    Ok(ProcessSpec { weight, horizon, terminal_law: law })
}
