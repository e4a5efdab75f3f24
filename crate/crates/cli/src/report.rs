//! Line-oriented `key: value` output, or one JSON object with `--json`.

use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self.entries.iter().cloned().collect();
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("plain values");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        for (key, value) in &self.entries {
            match value {
                // Lists of records or strings get one line each.
                Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_string()) => {
                    for item in items {
                        out.push_str(&format!("{key}: {}\n", inline(item)));
                    }
                }
                other => out.push_str(&format!("{key}: {}\n", inline(other))),
            }
        }
        out
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "none".into(),
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(" "),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_layout() {
        let mut r = Report::new();
        r.put("value", 3)
            .put("sequence", json!([1, 5, 2]))
            .put("cut", json!(["type1 u=1 w=2 i=2", "type1 u=2 w=3 i=2"]))
            .put("row", json!([{"family": "nova0", "count": 4}]));
        assert_eq!(
            r.render(false),
            "value: 3\nsequence: 1 5 2\ncut: type1 u=1 w=2 i=2\ncut: type1 u=2 w=3 i=2\nrow: family=nova0 count=4\n"
        );
        assert!(r.render(true).starts_with("{\n  \"value\": 3,"));
    }
}
