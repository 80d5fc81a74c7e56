//! Parsing of command-line inputs and rendering of JSON output.

use grascurve_core::field::{format_rational, parse_rational};
use grascurve_core::linalg::Subspace;
use grascurve_core::sections::{SectionModel, PRESET_NAMES};
use grascurve_core::{Field, Rationals, Q};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const Y2_ENV: &str = "GRASCURVE_Y2_H4";

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })
}

fn parse_json(text: &str, what: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON for {what}: {e}")))
}

/// Inline JSON when the argument starts with '[' or '{', otherwise a file path.
pub fn json_arg(arg: &str, what: &str) -> CliResult<Value> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        parse_json(t, what)
    } else {
        parse_json(&read_file(arg)?, what)
    }
}

/// A rational from a JSON integer or a "num/den" string.
pub fn rational(v: &Value) -> CliResult<Q> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Q::from_integer(i.into())),
            None => Err(CliError::Input(format!("{n} is not an integer; write fractions as \"num/den\""))),
        },
        Value::String(s) => Ok(parse_rational(s)?),
        other => Err(CliError::Input(format!("expected a rational, got {other}"))),
    }
}

pub fn vector(v: &Value, len: usize) -> CliResult<Vec<Q>> {
    let arr = v.as_array().ok_or_else(|| CliError::Input(format!("expected an array of {len} rationals")))?;
    if arr.len() != len {
        return Err(CliError::Input(format!("expected {len} entries, got {}", arr.len())));
    }
    arr.iter().map(rational).collect()
}

/// A subspace of Q⁵ from one vector or a list of row vectors.
pub fn subspace(v: &Value, dim: usize, what: &str) -> CliResult<Subspace<Rationals>> {
    let arr = v.as_array().ok_or_else(|| CliError::Input(format!("{what} must be a JSON array")))?;
    let rows = if arr.first().is_some_and(|x| x.is_array()) {
        arr.iter().map(|r| vector(r, 5)).collect::<CliResult<Vec<_>>>()?
    } else {
        vec![vector(v, 5)?]
    };
    let s = Subspace::span(&Rationals, 5, rows)?;
    if s.dim() != dim {
        return Err(CliError::Input(format!("{what} spans dimension {}, expected {dim}", s.dim())));
    }
    Ok(s)
}

/// The fourth Y2 covector from the environment, if set.
pub fn y2_override() -> CliResult<Option<Vec<Q>>> {
    match std::env::var(Y2_ENV) {
        Ok(s) => {
            let v = s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<Vec<_>, _>>()?;
            if v.len() != 10 {
                return Err(CliError::Input(format!("{Y2_ENV} needs 10 comma-separated rationals, got {}", v.len())));
            }
            Ok(Some(v))
        }
        Err(_) => Ok(None),
    }
}

/// A preset name or a JSON file holding either a list of covectors or
/// {"name": …, "hyperplanes": [...]}.
pub fn load_section(arg: &str) -> CliResult<SectionModel<Rationals>> {
    if PRESET_NAMES.contains(&arg) {
        return Ok(SectionModel::preset(arg, y2_override()?)?);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        CliError::Input(format!("section {arg:?} is neither a preset ({}) nor a readable file: {e}", PRESET_NAMES.join(", ")))
    })?;
    let v = parse_json(&text, "section")?;
    let (name, list) = match &v {
        Value::Array(_) => (arg.to_string(), &v),
        Value::Object(o) => {
            let name = o.get("name").and_then(Value::as_str).unwrap_or(arg).to_string();
            let list = o.get("hyperplanes").ok_or_else(|| CliError::Input("section object needs \"hyperplanes\"".into()))?;
            (name, list)
        }
        _ => return Err(CliError::Input("section must be a covector list or an object".into())),
    };
    let hs = list
        .as_array()
        .ok_or_else(|| CliError::Input("hyperplanes must be an array".into()))?
        .iter()
        .map(|h| vector(h, 10))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SectionModel::new(&Rationals, name, hs)?)
}

pub fn q(x: &Q) -> Value {
    Value::String(format_rational(x))
}

pub fn rows<F: Field>(s: &Subspace<F>) -> Value {
    Value::Array(s.format_rows().into_iter().map(|r| Value::Array(r.into_iter().map(Value::String).collect())).collect())
}

/// JSON text, pretty-printed with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Flattened "path  value" table for --pretty.
pub fn render_table(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    let w = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in lines {
        out.push_str(&format!("{k:<w$}  {val}\n"));
    }
    out
}

fn is_scalar_row(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if !is_scalar_row(v) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_points_and_planes() {
        let p = subspace(&json!([0, 1, 0, 0, "1/2"]), 1, "point").unwrap();
        assert_eq!(p.dim(), 1);
        let v = subspace(&json!([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 1]]), 3, "plane").unwrap();
        assert_eq!(v.dim(), 3);
        assert!(subspace(&json!([[1, 0, 0, 0, 0], [2, 0, 0, 0, 0]]), 2, "line").is_err());
        assert!(subspace(&json!([1, 0, 0]), 1, "point").is_err());
        assert!(rational(&json!(0.5)).is_err());
    }

    #[test]
    fn table_flattens_nested_values() {
        let t = render_table(&json!({"a": 1, "b": {"c": [1, 2]}, "d": [[1], [2]]}));
        assert_eq!(t, "a    1\nb.c  [1, 2]\nd.0  [1]\nd.1  [2]\n");
    }
}
