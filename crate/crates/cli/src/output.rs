//! Report envelope, float rounding and the plain-text table layout.

use serde_json::{Map, Number, Value};

/// Significant digits kept for floats in reports.
const FLOAT_DIGITS: usize = 12;

pub fn round_float(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Round every non-integer number in place.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_float).and_then(Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn envelope(command: &str, inputs: Value, mut outputs: Value) -> Value {
    round_floats(&mut outputs);
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("inputs".into(), inputs);
    map.insert("outputs".into(), outputs);
    map.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    Value::Object(map)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        _ => true,
    }
}

/// Objects whose values are all flat, sharing one key list.
fn uniform_rows(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let ok = items.iter().all(|i| {
        i.as_object()
            .is_some_and(|o| o.keys().eq(keys.iter()) && o.values().all(is_flat))
    });
    ok.then_some(keys)
}

fn write_grid(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    *out += &line(header);
    *out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for r in rows {
        *out += &line(r);
    }
}

fn render(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            let flat: Vec<(&String, &Value)> = map.iter().filter(|(_, v)| is_flat(v)).collect();
            if !flat.is_empty() {
                let rows: Vec<Vec<String>> = flat
                    .iter()
                    .map(|(k, v)| vec![format!("{prefix}{k}"), scalar(v)])
                    .collect();
                write_grid(out, &["field".into(), "value".into()], &rows);
                out.push('\n');
            }
            for (k, v) in map.iter().filter(|(_, v)| !is_flat(v)) {
                render(out, &format!("{prefix}{k}."), v);
            }
        }
        Value::Array(items) => {
            let name = prefix.trim_end_matches('.');
            if let Some(keys) = uniform_rows(items) {
                *out += &format!("[{name}]\n");
                let rows: Vec<Vec<String>> = items
                    .iter()
                    .map(|i| keys.iter().map(|k| scalar(&i[k.as_str()])).collect())
                    .collect();
                write_grid(out, &keys, &rows);
                out.push('\n');
            } else {
                for (idx, item) in items.iter().enumerate() {
                    render(out, &format!("{name}[{idx}]."), item);
                }
            }
        }
        other => *out += &format!("{}\t{}\n", prefix.trim_end_matches('.'), scalar(other)),
    }
}

/// Human-readable rendering of a report.
pub fn table(report: &Value) -> String {
    let mut out = String::new();
    render(&mut out, "", report);
    out
}
