//! The output document and its two renderings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use simplex_interp::Scalar;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub precision_bits: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    pub artifact_version: String,
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable record");
        text.push('\n');
        text
    }
}

/// A decimal JSON number carrying exactly `digits` significant digits.
pub fn number(x: &Scalar, digits: u32) -> Value {
    let text = x.to_decimal(digits as usize);
    Value::Number(
        text.parse::<Number>()
            .expect("decimal rendering is valid JSON"),
    )
}

pub fn numbers<'a>(xs: impl IntoIterator<Item = &'a Scalar>, digits: u32) -> Value {
    Value::Array(xs.into_iter().map(|x| number(x, digits)).collect())
}

/// A CSV table: header plus rows of already rendered cells.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// `field,value` rows for every leaf of `value`, with dotted paths and
/// zero-based array indices.
pub fn flatten(value: &Value) -> Table {
    let mut rows = Vec::new();
    walk(value, String::new(), &mut rows);
    Table {
        header: vec!["field".into(), "value".into()],
        rows,
    }
}

fn walk(value: &Value, path: String, rows: &mut Vec<Vec<String>>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                walk(v, join(key), rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, join(&i.to_string()), rows);
            }
        }
        leaf => rows.push(vec![path, cell(leaf)]),
    }
}

pub fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn object(fields: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(
        fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}
