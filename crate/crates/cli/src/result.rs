use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use rrcalc::rational::fmt_rational;
use rrcalc::{BigRational, RingElement};

/// One command's inputs and outputs. Maps are ordered, so serialisation is
/// deterministic.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub pass: Option<bool>,
}

impl CommandResult {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), v.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command  {}", self.command);
        for (title, map) in [("inputs", &self.inputs), ("outputs", &self.outputs)] {
            if map.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}:");
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                let _ = writeln!(out, "  {k:<width$}  {}", render(v));
            }
        }
        let pass = match self.pass {
            Some(true) => "true",
            Some(false) => "false",
            None => "n/a",
        };
        let _ = writeln!(out, "pass     {pass}");
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(render_inner).collect::<Vec<_>>().join(", "),
        other => render_inner(other),
    }
}

fn render_inner(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(_) => format!("[{}]", render(v)),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {}", render(v)))
            .collect::<Vec<_>>()
            .join("; "),
        other => other.to_string(),
    }
}

pub fn rational(c: &BigRational) -> Value {
    Value::String(fmt_rational(c))
}

pub fn rationals<'a>(cs: impl IntoIterator<Item = &'a BigRational>) -> Value {
    Value::Array(cs.into_iter().map(rational).collect())
}

pub fn element(e: &RingElement) -> Value {
    Value::String(e.to_string())
}

/// Coefficient table of an element, keyed by the exponent vector.
pub fn coefficient_table(e: &RingElement) -> Value {
    let map = e
        .terms()
        .map(|(m, c)| {
            let key = m
                .exponents()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            (format!("({key})"), rational(c))
        })
        .collect::<serde_json::Map<_, _>>();
    Value::Object(map)
}
