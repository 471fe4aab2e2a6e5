//! JSON and CSV rendering. Floats carry 17 significant digits, rationals
//! are `"p/q"` strings, and interval endpoints are rounded outward.

use gaplab_core::kv::format_rational;
use gaplab_core::trace::{DerivationTrace, TraceNode};
use gaplab_core::Interval;
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};

use crate::config::RunConfig;
use crate::CliError;

/// Significant digits of outward-rounded interval endpoints.
pub const ENDPOINT_DIGITS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Lab(gaplab_core::LabError::Parse(format!("unknown format `{other}`")))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Text of a JSON number kept verbatim.
fn raw_number(text: &str) -> Value {
    match serde_json::from_str::<Number>(text) {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(text.to_string()),
    }
}

/// `x` with 17 significant digits and an explicitly signed exponent.
pub fn float_text(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

pub fn float(x: f64) -> Value {
    if x.is_finite() {
        raw_number(&float_text(x))
    } else {
        Value::String(x.to_string())
    }
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn interval(iv: &Interval) -> Value {
    let (lo, hi) = iv.to_decimal_bounds(ENDPOINT_DIGITS);
    json!({ "value_lo": raw_number(&lo), "value_hi": raw_number(&hi), "midpoint": float(iv.mid()) })
}

fn node(n: &TraceNode) -> Value {
    let (lo, hi) = n.value.to_decimal_bounds(ENDPOINT_DIGITS);
    json!({
        "name": n.name,
        "value_lo": raw_number(&lo),
        "value_hi": raw_number(&hi),
        "midpoint": float(n.value.mid()),
        "formula": n.formula,
        "asymptotic": n.asymptotic,
        "children": n.children.iter().map(node).collect::<Vec<_>>(),
    })
}

pub fn trace(t: &DerivationTrace) -> Value {
    json!({
        "nodes": t.nodes.iter().map(node).collect::<Vec<_>>(),
        "checks": t.checks.iter().map(|c| json!({"name": c.name, "condition": c.condition, "passed": c.passed})).collect::<Vec<_>>(),
        "max_rel_width": float(t.max_rel_width()),
    })
}

/// The common report envelope.
pub fn envelope(cfg: &RunConfig, result: Value, warnings: &[String]) -> Value {
    let config: Map<String, Value> = cfg.values.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "tool": "gaplab",
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": cfg.subcommand,
        "config": config,
        "warnings": warnings,
        "result": result,
    })
}

pub fn to_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn trace_rows(prefix: &str, nodes: &[TraceNode], out: &mut Vec<[String; 4]>) {
    for n in nodes {
        let name = if prefix.is_empty() { n.name.clone() } else { format!("{prefix}/{}", n.name) };
        out.push([name.clone(), float_text(n.value.mid()), float_text(n.value.radius()), n.formula.clone()]);
        trace_rows(&name, &n.children, out);
    }
}

fn write_csv<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// CSV of a derivation: configuration rows, then every trace node depth first.
pub fn trace_csv(cfg: &RunConfig, t: &DerivationTrace) -> String {
    let mut rows: Vec<[String; 4]> = cfg
        .values
        .iter()
        .map(|(k, v)| [format!("config:{k}"), v.clone(), String::new(), "config".to_string()])
        .collect();
    trace_rows("", &t.nodes, &mut rows);
    write_csv(["name", "midpoint", "radius", "formula"], rows)
}

/// CSV of any report as flattened `key,value` pairs.
pub fn flat_csv(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    write_csv(["key", "value"], rows.into_iter().map(|(k, v)| [k, v]))
}

pub fn integer(n: u128) -> Value {
    raw_number(&n.to_string())
}
