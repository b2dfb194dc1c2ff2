//! Plain-text rendering: one `path  value` line per leaf, with arrays of
//! scalars kept on one line.

use serde_json::Value;

pub fn render(v: &Value) -> String {
    let mut rows = Vec::new();
    walk(v, String::new(), &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        out.push_str(&k);
        out.push_str(&" ".repeat(pad + 2));
        out.push_str(&v);
        out.push('\n');
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn walk(v: &Value, path: String, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(x, join(&path, k), rows);
            }
        }
        Value::Array(a) => {
            if let Some(items) = a.iter().map(scalar).collect::<Option<Vec<_>>>() {
                rows.push((path, format!("[{}]", items.join(", "))));
            } else {
                for (i, x) in a.iter().enumerate() {
                    walk(x, format!("{path}[{i}]"), rows);
                }
            }
        }
        leaf => rows.push((path, scalar(leaf).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattens_nested_documents() {
        let v = serde_json::json!({ "levels": { "C6/C3": { "invariant_factors": [9] } }, "passed": true });
        assert_eq!(render(&v), "levels.C6/C3.invariant_factors  [9]\npassed                          true\n");
    }
}
