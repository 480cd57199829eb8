//! One ordered JSON object per run, rendered either as JSON or as text.
//!
//! Text rendering is derived from the same object, so both formats carry
//! the same values:
//! * scalars print as `key: value`;
//! * arrays of scalars print one `key: item` line per item;
//! * arrays of objects under [`TABLE`] print as a `#`-prefixed header and
//!   one space-separated row per object;
//! * other arrays of objects print as `key: f1=v1 f2=v2` lines;
//! * nested objects print as `key.sub: value`.

use serde_json::{Map, Value};

/// Key whose array of objects is rendered as a plain table.
pub const TABLE: &str = "table";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.fields)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.fields.clone()))
            .expect("values are always serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_object(&mut out, "", &self.fields);
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}

fn render_object(out: &mut String, prefix: &str, obj: &Map<String, Value>) {
    for (k, v) in obj {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => render_object(out, &key, inner),
            Value::Array(items) if k == TABLE && items.iter().all(Value::is_object) => {
                render_table(out, items)
            }
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(o) => {
                            let parts: Vec<String> =
                                o.iter().map(|(f, x)| format!("{f}={}", scalar(x))).collect();
                            out.push_str(&format!("{key}: {}\n", parts.join(" ")));
                        }
                        x => out.push_str(&format!("{key}: {}\n", scalar(x))),
                    }
                }
            }
            x => out.push_str(&format!("{key}: {}\n", scalar(x))),
        }
    }
}

fn render_table(out: &mut String, rows: &[Value]) {
    let Some(Value::Object(first)) = rows.first() else {
        return;
    };
    let cols: Vec<&String> = first.keys().collect();
    out.push_str(&format!(
        "# {}\n",
        cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" ")
    ));
    for row in rows {
        if let Value::Object(o) = row {
            let cells: Vec<String> = cols
                .iter()
                .map(|c| o.get(*c).map(scalar).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
}
