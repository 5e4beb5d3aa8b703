use serde_json::Value;

const WIDTH: usize = 100;

/// Indented JSON where arrays of scalars, and arrays of such arrays, stay on
/// one line when they fit.
pub fn pretty(value: &Value) -> String {
    let mut out = String::new();
    write(value, 0, &mut out);
    out
}

fn flat(value: &Value) -> bool {
    match value {
        Value::Array(items) => items.iter().all(|v| !v.is_array() && !v.is_object() || flat_row(v)),
        _ => false,
    }
}

fn flat_row(value: &Value) -> bool {
    matches!(value, Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()))
}

fn write(value: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write(v, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let inline = flat(value).then(|| inline(value)).filter(|s| indent * 2 + s.len() <= WIDTH);
            if let Some(s) = inline {
                out.push_str(&s);
                return;
            }
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write(v, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&value.to_string()),
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn short_rows_stay_inline() {
        let v = json!({"atoms": ["a", "b"], "rows": [["0", "1"], ["1", "0"]], "empty": {}});
        assert_eq!(
            pretty(&v),
            "{\n  \"atoms\": [\"a\", \"b\"],\n  \"rows\": [[\"0\", \"1\"], [\"1\", \"0\"]],\n  \"empty\": {}\n}"
        );
    }

    #[test]
    fn nested_objects_expand() {
        let v = json!([{"k": 1}]);
        assert_eq!(pretty(&v), "[\n  {\n    \"k\": 1\n  }\n]");
    }

    #[test]
    fn output_parses_back() {
        let v = json!({"s": "quote \" and \\ slash", "n": [1, 2.5, null, true], "deep": [[[1]]]});
        assert_eq!(serde_json::from_str::<Value>(&pretty(&v)).unwrap(), v);
    }
}
