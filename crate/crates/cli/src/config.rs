//! Run configuration: built-in defaults, then a `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::Path;

use gaplab_core::kv::{parse_kv, parse_rational};
use gaplab_core::LabError;
use num_rational::BigRational;

use crate::CliError;

/// Keys shared by every subcommand.
pub const GLOBAL_DEFAULTS: [(&str, &str); 3] = [("format", "json"), ("seed", "0"), ("threads", "0")];

/// Parameter keys and default values of one subcommand.
pub fn defaults(subcommand: &str) -> &'static [(&'static str, &'static str)] {
    match subcommand {
        "derive" => &[
            ("k", "1"),
            ("log2_x", "auto"),
            ("theta", "default"),
            ("c_IJ", "default"),
            ("C_PAP", "default"),
            ("D_PAP", "default"),
            ("C_UB", "default"),
            ("D_UB", "default"),
        ],
        "zero-constants" => &[
            ("R", "9.6459"),
            ("c_ZFR", "1/24"),
            ("jutila_exp", "6"),
            ("trivial_exp", "15"),
            ("x", "100000"),
        ],
        "maynard" => &[("r", "2"), ("degree", "2"), ("c_IJ", "1/4"), ("gram", "false")],
        "gaps" => &[("x", "1000"), ("k", "1"), ("records", "false")],
        "mertens" => &[("xs", "1000,10000,100000,1000000")],
        "bt-check" => &[("x", "10000"), ("q_max", "50"), ("q", "none"), ("a", "none")],
        "ub-pairs" => &[("x", "5"), ("b0", "1"), ("z", "1000"), ("pairs", "50"), ("a", "none"), ("b", "none")],
        "construct" => &[
            ("x", "10000"),
            ("b0", "1"),
            ("c", "default"),
            ("s_min", "default"),
            ("y", "default"),
            ("z", "default"),
            ("strategy", "uniform-random"),
            ("bands", "0:0.25,0.25:0.5,0.5:0.75,0.75:1"),
            ("A", "1"),
            ("eps", "0.01"),
            ("members", "none"),
            ("evaluate_only", "false"),
        ],
        _ => &[],
    }
}

/// The fully resolved parameters of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: String,
    pub values: BTreeMap<String, String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Lab(LabError::Parse(msg.into()))
}

impl RunConfig {
    pub fn resolve(subcommand: &str, file: Option<&Path>, flags: Vec<(&'static str, Option<String>)>) -> Result<Self, CliError> {
        let table = defaults(subcommand);
        let known = |k: &str| table.iter().chain(GLOBAL_DEFAULTS.iter()).any(|(key, _)| *key == k);
        let mut values: BTreeMap<String, String> =
            table.iter().chain(GLOBAL_DEFAULTS.iter()).map(|(k, v)| (k.to_string(), v.to_string())).collect();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)?;
            for (k, v) in parse_kv(&text)? {
                if !known(&k) {
                    return Err(usage(format!("unknown key `{k}` for `{subcommand}` in {}", path.display())));
                }
                values.insert(k, v);
            }
        }
        for (k, v) in flags {
            if let Some(v) = v {
                values.insert(k.to_string(), v);
            }
        }
        Ok(RunConfig { subcommand: subcommand.to_string(), values })
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    /// `None` for the placeholder values `auto`, `default`, `none`.
    pub fn optional(&self, key: &str) -> Option<&str> {
        match self.raw(key) {
            "auto" | "default" | "none" | "" => None,
            v => Some(v),
        }
    }

    pub fn u64(&self, key: &str) -> Result<u64, CliError> {
        parse_u64(key, self.raw(key))
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        Ok(self.u64(key)? as usize)
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        parse_f64(key, self.raw(key))
    }

    pub fn opt_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.optional(key).map(|v| parse_f64(key, v)).transpose()
    }

    pub fn rational(&self, key: &str) -> Result<BigRational, CliError> {
        Ok(parse_rational(self.raw(key))?)
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        match self.raw(key) {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            v => Err(usage(format!("`{key}` expects true or false, got `{v}`"))),
        }
    }
}

pub fn parse_u64(key: &str, v: &str) -> Result<u64, CliError> {
    if let Ok(n) = v.parse::<u64>() {
        return Ok(n);
    }
    // accept exact integers written as 1e6
    match v.parse::<f64>() {
        Ok(f) if f >= 0.0 && f.fract() == 0.0 && f < 1.8e19 => Ok(f as u64),
        _ => Err(usage(format!("`{key}` expects a nonnegative integer, got `{v}`"))),
    }
}

pub fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    if let Ok(f) = v.parse::<f64>() {
        return Ok(f);
    }
    let q = parse_rational(v).map_err(|_| usage(format!("`{key}` expects a number, got `{v}`")))?;
    Ok(gaplab_core::Interval::from_ratio(&q).mid())
}
