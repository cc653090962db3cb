//! Report rendering: structured JSON plus a flattened aligned-text table of
//! the same fields.

use contframe_core::{CMat, Field, OperatorFramePair, VectorFramePair};
use serde_json::{json, Map, Value};

/// Matrix as a dense column list, complex entries as `[re, im]` pairs when
/// anything is genuinely complex.
pub fn matrix_value(m: &CMat, field: Field) -> Value {
    let complex = field == Field::Complex;
    let col = |j: usize| -> Value {
        Value::Array(
            (0..m.nrows())
                .map(|i| {
                    let z = m[(i, j)];
                    if complex {
                        json!([z.re, z.im])
                    } else {
                        json!(z.re)
                    }
                })
                .collect(),
        )
    };
    Value::Array((0..m.ncols()).map(col).collect())
}

/// A complete frame file carrying the pair under the family name `result`,
/// so command outputs can be saved and fed straight back in.
pub fn vector_pair_value(pair: &VectorFramePair) -> Value {
    json!({
        "schema_version": crate::format::SCHEMA_VERSION,
        "measure": serde_json::to_value(pair.space()).unwrap(),
        "field": pair.field(),
        "families": {
            "result": {
                "kind": "vector",
                "dim": pair.dim(),
                "x": matrix_value(pair.x(), pair.field()),
                "tau": matrix_value(pair.tau(), pair.field()),
            }
        }
    })
}

pub fn operator_pair_value(pair: &OperatorFramePair) -> Value {
    let mats = |family: &[CMat]| -> Value {
        Value::Array(
            family
                .iter()
                .map(|m| {
                    Value::Array(
                        (0..m.nrows())
                            .map(|i| {
                                Value::Array(
                                    (0..m.ncols())
                                        .map(|j| {
                                            let z = m[(i, j)];
                                            if pair.field() == Field::Complex {
                                                json!([z.re, z.im])
                                            } else {
                                                json!(z.re)
                                            }
                                        })
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    json!({
        "schema_version": crate::format::SCHEMA_VERSION,
        "measure": serde_json::to_value(pair.space()).unwrap(),
        "field": pair.field(),
        "families": {
            "result": {
                "kind": "operator",
                "dim_h": pair.dim_h(),
                "dim_h0": pair.dim_h0(),
                "a": mats(pair.a()),
                "psi": mats(pair.psi()),
            }
        }
    })
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        Value::Array(items) => {
            // Compact small arrays inline; recurse into arrays of objects.
            if items.iter().any(|v| v.is_object()) {
                for (i, v) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), v, rows);
                }
            } else {
                let compact = serde_json::to_string(value).unwrap();
                let shown = if compact.len() > 96 {
                    format!("{}... ({} items)", &compact[..93], items.len())
                } else {
                    compact
                };
                rows.push((prefix.to_string(), shown));
            }
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// Aligned `key  value` listing of every field in the report.
pub fn render_text(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
