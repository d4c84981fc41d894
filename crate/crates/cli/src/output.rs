use std::fmt::Write as _;

use quditc::format::{round_sig, DEFAULT_DIGITS};
use quditc::schedule::DepthMetrics;
use quditc::QuditState;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

pub const DIGITS_ENV: &str = "QUDITC_FLOAT_DIGITS";

/// Significant digits for every float the CLI prints.
pub fn float_digits() -> Result<usize, CliError> {
    match std::env::var(DIGITS_ENV) {
        Err(_) => Ok(DEFAULT_DIGITS),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(d),
            _ => Err(CliError::Usage(format!(
                "{DIGITS_ENV} must be an integer in 1..=17, got {v:?}"
            ))),
        },
    }
}

fn round_value(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap(), digits);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_value(x, digits)).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, x)| (k, round_value(x, digits)))
                .collect(),
        ),
        other => other,
    }
}

/// Pretty JSON with every float rounded to `digits` significant digits.
pub fn to_json<T: Serialize>(value: &T, digits: usize) -> String {
    let v = serde_json::to_value(value).expect("serialisable value");
    let mut text = serde_json::to_string_pretty(&round_value(v, digits)).expect("valid json");
    text.push('\n');
    text
}

/// One `[re, im]` pair per line.
pub fn state_json(state: &QuditState, digits: usize) -> String {
    let rows: Vec<String> = state
        .to_pairs()
        .iter()
        .map(|&[re, im]| {
            let pair = round_value(serde_json::json!([re, im]), digits);
            format!("  {pair}")
        })
        .collect();
    format!("[\n{}\n]\n", rows.join(",\n"))
}

pub fn probabilities_csv(state: &QuditState, digits: usize) -> String {
    let shape = state.shape();
    let mut out = String::from("level,bits,probability\n");
    for (level, p) in state.probabilities().into_iter().enumerate() {
        let bits = if level == shape.ancilla() {
            "ancilla".to_string()
        } else {
            shape
                .index_to_bits(level)
                .expect("computational level")
                .to_string()
        };
        let _ = writeln!(
            out,
            "{level},{bits},{}",
            quditc::format::fmt_float(p, digits)
        );
    }
    out
}

pub fn metrics_table(m: &DepthMetrics) -> String {
    let width = m
        .per_gate
        .iter()
        .map(|g| g.label.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>9}  {:>5}",
        "gate", "rotations", "depth"
    );
    for g in &m.per_gate {
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {:>5}",
            g.label, g.rotation_count, g.depth
        );
    }
    let _ = writeln!(
        out,
        "{:<width$}  {:>9}  {:>5}",
        "total", m.rotation_count, m.depth
    );
    out
}
