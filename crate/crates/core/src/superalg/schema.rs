//! JSON persistence.
//!
//! ```json
//! { "name": "...", "dim": 2, "parity": [0, 1], "unit": ["1", "0"] | null,
//!   "table": [[i, j, [[k, "c"], ...]], ...], "meta": { ... } }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Meta, SuperAlgebra};
use crate::exactfield::Scalar;

type TableRow = (usize, usize, Vec<(usize, Scalar)>);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    dim: usize,
    parity: Vec<u8>,
    unit: Option<Vec<Scalar>>,
    table: Vec<TableRow>,
    #[serde(default)]
    meta: Meta,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

/// Canonical text form: one table row per line, sorted, compact scalars, trailing newline.
pub fn to_json(a: &SuperAlgebra) -> String {
    let mut out = String::from("{\n");
    out += &format!("  \"name\": {},\n", js(a.name()));
    out += &format!("  \"dim\": {},\n", a.dim());
    out += &format!("  \"parity\": {},\n", js(a.parity()));
    out += &format!("  \"unit\": {},\n", js(&a.unit().cloned()));
    let d = a.dim();
    let rows: Vec<String> = (0..d * d)
        .filter(|ij| !a.product(ij / d, ij % d).is_empty())
        .map(|ij| {
            let (i, j) = (ij / d, ij % d);
            format!("    [{i},{j},{}]", js(a.product(i, j)))
        })
        .collect();
    if rows.is_empty() {
        out += "  \"table\": [],\n";
    } else {
        out += &format!("  \"table\": [\n{}\n  ],\n", rows.join(",\n"));
    }
    out += &format!("  \"meta\": {}\n", js(&a.meta));
    out += "}\n";
    out
}

fn js<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn from_json(text: &str) -> Result<SuperAlgebra, AlgebraError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: AlgebraFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let pointer = if path == "." {
            String::new()
        } else {
            to_pointer(&path)
        };
        schema(pointer, e.into_inner().to_string())
    })?;
    if file.parity.len() != file.dim {
        return Err(schema(
            "/parity",
            format!("expected {} entries, found {}", file.dim, file.parity.len()),
        ));
    }
    if let Some((n, _)) = file.parity.iter().enumerate().find(|(_, &p)| p > 1) {
        return Err(schema(format!("/parity/{n}"), "parity must be 0 or 1"));
    }
    let mut terms = Vec::new();
    for (n, (i, j, row)) in file.table.into_iter().enumerate() {
        for (m, (k, c)) in row.into_iter().enumerate() {
            if i >= file.dim || j >= file.dim || k >= file.dim {
                return Err(schema(
                    format!("/table/{n}/2/{m}"),
                    format!("index out of range for dim {}", file.dim),
                ));
            }
            terms.push((i, j, k, c));
        }
    }
    let mut alg = SuperAlgebra::new(file.name, file.parity, terms)?;
    if !file.meta.labels.is_empty() && file.meta.labels.len() != file.dim {
        return Err(schema("/meta/labels", "label count differs from dim"));
    }
    for (n, e) in file.meta.idempotents.iter().enumerate() {
        if e.len() != file.dim {
            return Err(schema(
                format!("/meta/idempotents/{n}"),
                "length differs from dim",
            ));
        }
    }
    alg.meta = file.meta;
    match file.unit {
        Some(u) if u.len() != file.dim => Err(schema("/unit", "length differs from dim")),
        Some(u) => alg.with_unit(u),
        None => Ok(alg),
    }
}

/// serde_path_to_error renders paths as `a.b[3].c`; convert to a JSON pointer.
fn to_pointer(path: &str) -> String {
    let mut out = String::new();
    for seg in path.split('.') {
        let (head, rest) = seg.split_once('[').map_or((seg, ""), |(h, r)| (h, r));
        if !head.is_empty() {
            out.push('/');
            out.push_str(head);
        }
        for idx in rest.split('[') {
            let idx = idx.trim_end_matches(']');
            if !idx.is_empty() {
                out.push('/');
                out.push_str(idx);
            }
        }
    }
    out
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<SuperAlgebra, AlgebraError> {
    let text =
        std::fs::read_to_string(path.as_ref()).map_err(|e| AlgebraError::Io(e.to_string()))?;
    from_json(&text)
}

pub fn save_algebra(a: &SuperAlgebra, path: impl AsRef<Path>) -> Result<(), AlgebraError> {
    std::fs::write(path.as_ref(), to_json(a)).map_err(|e| AlgebraError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::super::grassmann;
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let l2 = grassmann(2).unwrap();
        let text = to_json(&l2);
        let back = from_json(&text).unwrap();
        assert_eq!(back, l2);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn bad_scalar_reports_pointer() {
        let text = r#"{"name":"x","dim":1,"parity":[0],"unit":null,"table":[[0,0,[[0,"1/0"]]]],"meta":{}}"#;
        match from_json(text) {
            Err(AlgebraError::Schema { pointer, .. }) => assert_eq!(pointer, "/table/0/2/0/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grading_violation_names_triple() {
        let text = r#"{"name":"x","dim":2,"parity":[0,1],"unit":null,"table":[[0,0,[[1,"1"]]]],"meta":{}}"#;
        assert_eq!(
            from_json(text),
            Err(AlgebraError::Grading { i: 0, j: 0, k: 1 })
        );
    }

    #[test]
    fn missing_field() {
        let text = r#"{"name":"x","dim":1,"parity":[0],"unit":null}"#;
        assert!(matches!(from_json(text), Err(AlgebraError::Schema { .. })));
    }
}
