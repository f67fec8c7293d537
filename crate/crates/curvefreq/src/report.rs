//! Output records: exact rationals as strings, with derived decimal
//! renderings. The exact values are authoritative; decimals carry 20
//! significant digits and exist for human eyes only.

use crate::rational::{format_rational, to_decimal, Rational};
use serde::Serialize;
use std::collections::BTreeMap;

pub const DECIMAL_DIGITS: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    /// Exact rationals, serialized as `p/q`.
    pub exact: BTreeMap<String, String>,
    /// 20-significant-digit decimal renderings of the exact values.
    pub decimal: BTreeMap<String, String>,
    /// Wall-clock time; populated only when timing output is requested, so
    /// that default output stays byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<u128>,
}

impl ReportRecord {
    pub fn new(command: &str) -> Self {
        ReportRecord {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            exact: BTreeMap::new(),
            decimal: BTreeMap::new(),
            timings_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn value(&mut self, key: &str, value: &Rational) -> &mut Self {
        self.exact.insert(key.to_string(), format_rational(value));
        self.decimal
            .insert(key.to_string(), to_decimal(value, DECIMAL_DIGITS));
        self
    }

    pub fn text(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.exact.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
