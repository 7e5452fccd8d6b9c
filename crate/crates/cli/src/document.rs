//! JSON interchange format for complexes.
//!
//! Two shapes are accepted:
//!
//! ```json
//! { "augmented": true,
//!   "boundaries": [ { "dim": 0, "cells": ["a", "b"], "matrix": [] },
//!                   { "dim": 1, "cells": ["ab"], "matrix": [[-1], [1]] } ] }
//!
//! { "simplicial_facets": [[1, 2, 3], [3, 4]] }
//! ```
//!
//! `matrix` lists the rows of `∂_dim`, one row per `(dim−1)`-cell. The
//! augmentation row of `∂₀` is implied by `augmented`, so the dimension-0
//! entry carries an empty matrix (or none). Integers may be JSON numbers or
//! decimal strings; on output anything past 2^53 is written as a string.

use cellcut_core::complex::CellComplex;
use cellcut_core::exact::IntMatrix;
use cellcut_core::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{path}`: {message}")]
    Field { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn field(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field { path: path.into(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionEntry {
    pub dim: usize,
    pub cells: Vec<String>,
    pub matrix: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexDocument {
    Boundaries { augmented: bool, dims: Vec<DimensionEntry> },
    Simplicial { augmented: bool, facets: Vec<Vec<u64>> },
}

const SAFE: i64 = (1 << 53) - 1;

/// JSON encoding of an integer: a number when it is exactly representable in
/// a double, a decimal string otherwise.
pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

fn int_from_json(v: &Value, path: &str) -> Result<BigInt, DocumentError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(field(path, format!("{} is not an exact integer; write large values as decimal strings", n)))
            }
        }
        Value::String(s) => {
            s.trim().parse::<BigInt>().map_err(|_| field(path, format!("{:?} is not a decimal integer", s)))
        }
        other => Err(field(path, format!("expected an integer, found {}", kind(other)))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, DocumentError> {
    v.as_array().ok_or_else(|| field(path, format!("expected an array, found {}", kind(v))))
}

fn non_negative(v: &Value, path: &str) -> Result<u64, DocumentError> {
    let x = int_from_json(v, path)?;
    x.to_u64().ok_or_else(|| field(path, format!("expected a non-negative integer, found {}", x)))
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: {
                let full = e.to_string();
                match full.rfind(" at line ") {
                    Some(i) => full[..i].to_string(),
                    None => full,
                }
            },
        })?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, DocumentError> {
        let obj = value.as_object().ok_or_else(|| field("$", format!("expected an object, found {}", kind(value))))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "augmented" | "boundaries" | "simplicial_facets") {
                return Err(field(key.as_str(), "unknown field"));
            }
        }
        let augmented = match obj.get("augmented") {
            None => true,
            Some(Value::Bool(b)) => *b,
            Some(other) => return Err(field("augmented", format!("expected a boolean, found {}", kind(other)))),
        };
        match (obj.get("boundaries"), obj.get("simplicial_facets")) {
            (Some(_), Some(_)) => {
                Err(DocumentError::Invalid("give either `boundaries` or `simplicial_facets`, not both".into()))
            }
            (None, None) => {
                Err(DocumentError::Invalid("document needs a `boundaries` or a `simplicial_facets` field".into()))
            }
            (Some(b), None) => Ok(ComplexDocument::Boundaries { augmented, dims: parse_dims(b)? }),
            (None, Some(f)) => {
                let mut facets = Vec::new();
                for (i, facet) in array(f, "simplicial_facets")?.iter().enumerate() {
                    let path = format!("simplicial_facets[{}]", i);
                    let verts = array(facet, &path)?
                        .iter()
                        .enumerate()
                        .map(|(j, v)| non_negative(v, &format!("{}[{}]", path, j)))
                        .collect::<Result<Vec<u64>, _>>()?;
                    if verts.is_empty() {
                        return Err(field(path, "a facet needs at least one vertex"));
                    }
                    facets.push(verts);
                }
                Ok(ComplexDocument::Simplicial { augmented, facets })
            }
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        match self {
            ComplexDocument::Boundaries { augmented, dims } => {
                obj.insert("augmented".into(), Value::Bool(*augmented));
                let entries = dims
                    .iter()
                    .map(|e| {
                        let mut m = Map::new();
                        m.insert("dim".into(), Value::from(e.dim));
                        m.insert("cells".into(), Value::from(e.cells.clone()));
                        let rows = e.matrix.iter().map(|r| Value::Array(r.iter().map(int_to_json).collect())).collect();
                        m.insert("matrix".into(), Value::Array(rows));
                        Value::Object(m)
                    })
                    .collect();
                obj.insert("boundaries".into(), Value::Array(entries));
            }
            ComplexDocument::Simplicial { augmented, facets } => {
                obj.insert("augmented".into(), Value::Bool(*augmented));
                let list = facets.iter().map(|f| Value::from(f.clone())).collect();
                obj.insert("simplicial_facets".into(), Value::Array(list));
            }
        }
        Value::Object(obj)
    }

    /// Indented JSON with a trailing newline.
    pub fn emit(&self) -> String {
        to_json_text(&self.to_value())
    }

    /// Boundary-matrix form of an existing complex.
    pub fn from_complex(c: &CellComplex) -> Self {
        let dims = (0..=c.dim())
            .map(|dim| {
                let matrix = if dim == 0 {
                    Vec::new()
                } else {
                    let b = c.boundary(dim);
                    (0..b.rows()).map(|i| b.row(i).to_vec()).collect()
                };
                DimensionEntry { dim, cells: c.cells(dim).to_vec(), matrix }
            })
            .collect();
        ComplexDocument::Boundaries { augmented: c.is_augmented(), dims }
    }

    pub fn to_complex(&self) -> Result<CellComplex, DocumentError> {
        match self {
            ComplexDocument::Simplicial { augmented, facets } => {
                CellComplex::from_simplicial_facets_with(facets, *augmented)
                    .map_err(|e| DocumentError::Invalid(e.to_string()))
            }
            ComplexDocument::Boundaries { augmented, dims } => {
                let mut sorted: Vec<&DimensionEntry> = dims.iter().collect();
                sorted.sort_by_key(|e| e.dim);
                for (k, e) in sorted.iter().enumerate() {
                    if e.dim != k {
                        return Err(DocumentError::Invalid(format!(
                            "boundaries must cover dimensions 0..=d exactly once; dimension {} is {}",
                            k,
                            if e.dim > k { "missing" } else { "repeated" }
                        )));
                    }
                }
                if sorted.is_empty() {
                    return Err(DocumentError::Invalid("complex has no cells".into()));
                }
                if !sorted[0].matrix.is_empty() {
                    return Err(field(
                        "boundaries[dim=0].matrix",
                        "must be empty; the augmentation row is implied by `augmented`",
                    ));
                }
                let cells: Vec<Vec<String>> = sorted.iter().map(|e| e.cells.clone()).collect();
                let mut boundaries = Vec::new();
                for e in &sorted[1..] {
                    let rows = cells[e.dim - 1].len();
                    let cols = e.cells.len();
                    let path = format!("boundaries[dim={}].matrix", e.dim);
                    if e.matrix.len() != rows {
                        return Err(field(
                            path,
                            format!("expected {} rows (one per {}-cell), found {}", rows, e.dim - 1, e.matrix.len()),
                        ));
                    }
                    if let Some(i) = e.matrix.iter().position(|r| r.len() != cols) {
                        return Err(field(
                            format!("{}[{}]", path, i),
                            format!("expected {} entries (one per {}-cell), found {}", cols, e.dim, e.matrix[i].len()),
                        ));
                    }
                    boundaries.push(IntMatrix::from_fn(rows, cols, |i, j| e.matrix[i][j].clone()));
                }
                let c = CellComplex::from_parts(cells, boundaries, *augmented);
                c.validate().map_err(|v| DocumentError::Invalid(format!("invalid complex: {}", v)))?;
                Ok(c)
            }
        }
    }
}

/// Indented JSON where arrays of scalars (matrix rows, label lists) stay on
/// one line. Ends with a newline.
pub fn to_json_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(scalar) => {
            out.push_str(&serde_json::to_string(v).expect("values serialize").replace(',', ", "));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn parse_dims(v: &Value) -> Result<Vec<DimensionEntry>, DocumentError> {
    let mut out = Vec::new();
    for (i, entry) in array(v, "boundaries")?.iter().enumerate() {
        let path = format!("boundaries[{}]", i);
        let obj = entry
            .as_object()
            .ok_or_else(|| field(path.as_str(), format!("expected an object, found {}", kind(entry))))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "dim" | "cells" | "matrix") {
                return Err(field(format!("{}.{}", path, key), "unknown field"));
            }
        }
        let dim = obj
            .get("dim")
            .ok_or_else(|| field(format!("{}.dim", path), "missing"))
            .and_then(|d| non_negative(d, &format!("{}.dim", path)))? as usize;
        let cells_path = format!("{}.cells", path);
        let cells = array(obj.get("cells").ok_or_else(|| field(cells_path.as_str(), "missing"))?, &cells_path)?
            .iter()
            .enumerate()
            .map(|(j, c)| match c {
                Value::String(s) => Ok(s.clone()),
                other => {
                    Err(field(format!("{}[{}]", cells_path, j), format!("expected a label, found {}", kind(other))))
                }
            })
            .collect::<Result<Vec<String>, _>>()?;
        let matrix_path = format!("{}.matrix", path);
        let matrix = match obj.get("matrix") {
            None if dim == 0 => Vec::new(),
            None => return Err(field(matrix_path, "missing")),
            Some(m) => array(m, &matrix_path)?
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let row_path = format!("{}[{}]", matrix_path, r);
                    array(row, &row_path)?
                        .iter()
                        .enumerate()
                        .map(|(c, x)| int_from_json(x, &format!("{}[{}]", row_path, c)))
                        .collect::<Result<Vec<BigInt>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        out.push(DimensionEntry { dim, cells, matrix });
    }
    Ok(out)
}
