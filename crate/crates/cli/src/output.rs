//! Canonical JSON values and their plain-text rendering.

use cuntz_core::wire::round15;
use serde_json::{Number, Value};

/// Every float rounded to 15 significant digits, `-0` folded into `0`.
///
/// Objects are `BTreeMap`-backed, so keys come out sorted.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().unwrap_or(0.0));
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_) | Value::Null) || is_pair(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_pair(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_f64))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) if s.is_empty() => "\"\"".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) if is_pair(v) => {
            let (re, im) = (a[0].as_f64().unwrap_or(0.0), a[1].as_f64().unwrap_or(0.0));
            if im == 0.0 {
                format!("{re}")
            } else if re == 0.0 {
                format!("{im}i")
            } else {
                format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs())
            }
        }
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        leaf => out.push_str(&format!("{pad}{}\n", inline(leaf))),
    }
}

/// Indented `key: value` lines; pairs of floats print as complex numbers.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out.trim_end().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_rounds_nested_floats() {
        let v = canonical(json!({"b": [0.1 + 0.2, -0.0], "a": {"x": 1, "y": std::f64::consts::FRAC_1_SQRT_2}}));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"x":1,"y":0.707106781186548},"b":[0.3,0.0]}"#);
    }

    #[test]
    fn text_rendering() {
        let v = json!({"verdict": "refuted", "spectrum": [[1.0, 0.0], [0.0, -1.0]], "orbits": [{"mult": 1, "cyc": [1, 1], "word": ""}]});
        assert_eq!(render_text(&v), "orbits:\n  -\n    cyc: [1, 1]\n    mult: 1\n    word: \"\"\nspectrum: [1, -1i]\nverdict: refuted");
    }
}
