//! JSON encodings of fields, algebras, restricted Lie algebras, groups and bases.
//!
//! Scalars are integers over `F_p` and `{"num": [...], "den": [...]}` over `F_p(t)`.
//! Structure constants are sparse lists of `[i, j, k, c]` (algebras, brackets)
//! or `[i, k, c]` (p-maps).

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraPresentation, AugmentedAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, Field, FieldValue, Vector};
use crate::mbasis::{FmbCertificate, Product, ProductTable};
use crate::pgroup::GroupTable;
use crate::rlie::RestrictedLiePresentation;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field '{key}'")))
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("expected a non-negative integer, got {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("'{what}' must be an array")))
}

pub fn field_to_json(f: Field) -> Value {
    serde_json::to_value(f).expect("field serializes")
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    serde_json::from_value(v.clone()).map_err(|e| bad(format!("bad field: {e}")))
}

pub fn vector_to_json(v: &[FieldValue]) -> Value {
    Value::Array(v.iter().map(FieldValue::to_json).collect())
}

pub fn vectors_to_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_to_json(v)).collect())
}

/// Vectors of length `n` over `field`.
pub fn vectors_from_json(field: Field, n: usize, v: &Value) -> Result<Vec<Vector>> {
    array(v, "vectors")?
        .iter()
        .map(|row| {
            let r = field.vector_from_json(row)?;
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            Ok(r)
        })
        .collect()
}

fn labels_from_json(v: &Value, dim: usize, prefix: &str) -> Result<Vec<String>> {
    match v.get("labels") {
        None => Ok((0..dim).map(|i| format!("{prefix}{i}")).collect()),
        Some(l) => {
            let labels: Vec<String> = array(l, "labels")?
                .iter()
                .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| bad("labels must be strings")))
                .collect::<Result<_>>()?;
            if labels.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: labels.len() });
            }
            Ok(labels)
        }
    }
}

fn quads(field: Field, v: &Value, what: &str) -> Result<Vec<(usize, usize, usize, FieldValue)>> {
    array(v, what)?
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([i, j, k, c]) => Ok((usize_of(i)?, usize_of(j)?, usize_of(k)?, field.value_from_json(c)?)),
            _ => Err(bad(format!("'{what}' entries must be [i, j, k, c], got {e}"))),
        })
        .collect()
}

pub fn algebra_to_json(a: &AlgebraPresentation, augmentation: Option<&[FieldValue]>) -> Value {
    let mut m = Map::new();
    m.insert("field".into(), field_to_json(a.field()));
    m.insert("dim".into(), json!(a.dim()));
    m.insert("labels".into(), json!(a.labels()));
    m.insert("unit".into(), vector_to_json(a.unit()));
    let mult: Vec<Value> = a.entries().map(|(i, j, k, c)| json!([i, j, k, c.to_json()])).collect();
    m.insert("mult".into(), Value::Array(mult));
    if let Some(e) = augmentation {
        m.insert("augmentation".into(), vector_to_json(e));
    }
    Value::Object(m)
}

pub fn augmented_to_json(a: &AugmentedAlgebra) -> Value {
    algebra_to_json(a.algebra(), Some(a.augmentation()))
}

/// Reads an algebra; `augmentation` is returned when present.
pub fn algebra_from_json(v: &Value) -> Result<(AlgebraPresentation, Option<Vector>)> {
    let field = field_from_json(get(v, "field")?)?;
    let dim = usize_of(get(v, "dim")?)?;
    let labels = labels_from_json(v, dim, "e")?;
    let unit = match v.get("unit") {
        Some(u) => field.vector_from_json(u)?,
        None if dim > 0 => unit_vector(field, dim, 0),
        None => return Err(bad("empty algebra")),
    };
    let a = AlgebraPresentation::from_entries(field, labels, quads(field, get(v, "mult")?, "mult")?, unit)?;
    let aug = v.get("augmentation").map(|e| field.vector_from_json(e)).transpose()?;
    Ok((a, aug))
}

/// Reads an augmented algebra. Without an explicit augmentation the unit must
/// be the first basis vector and `ε` is the first coordinate.
pub fn augmented_from_json(v: &Value) -> Result<AugmentedAlgebra> {
    let (a, aug) = algebra_from_json(v)?;
    match aug {
        Some(e) => AugmentedAlgebra::new(a, e),
        None => crate::algebra::catalog::augment_at_unit(a),
    }
}

pub fn lie_to_json(l: &RestrictedLiePresentation) -> Value {
    let bracket: Vec<Value> = l.bracket_entries().map(|(i, j, k, c)| json!([i, j, k, c.to_json()])).collect();
    let pmap: Vec<Value> = l.pmap_entries().map(|(i, k, c)| json!([i, k, c.to_json()])).collect();
    json!({
        "field": field_to_json(l.field()),
        "p": l.p(),
        "dim": l.dim(),
        "labels": l.labels(),
        "bracket": bracket,
        "pmap": pmap,
    })
}

pub fn lie_from_json(v: &Value) -> Result<RestrictedLiePresentation> {
    let field = field_from_json(get(v, "field")?)?;
    if let Some(p) = v.get("p") {
        if usize_of(p)? != field.p() as usize {
            return Err(bad("'p' disagrees with the field"));
        }
    }
    let dim = usize_of(get(v, "dim")?)?;
    let labels = labels_from_json(v, dim, "x")?;
    let bracket = match v.get("bracket") {
        Some(b) => quads(field, b, "bracket")?,
        None => Vec::new(),
    };
    let pmap = match v.get("pmap") {
        None => Vec::new(),
        Some(pm) => array(pm, "pmap")?
            .iter()
            .map(|e| match e.as_array().map(Vec::as_slice) {
                Some([i, k, c]) => Ok((usize_of(i)?, usize_of(k)?, field.value_from_json(c)?)),
                _ => Err(bad(format!("'pmap' entries must be [i, k, c], got {e}"))),
            })
            .collect::<Result<_>>()?,
    };
    let l = RestrictedLiePresentation::from_entries(field, labels, bracket, pmap)?;
    l.ensure_valid()?;
    Ok(l)
}

pub fn group_to_json(g: &GroupTable) -> Value {
    json!({ "p": g.p(), "order": g.order(), "table": g.table(), "labels": g.labels() })
}

pub fn group_from_json(v: &Value) -> Result<GroupTable> {
    let p = usize_of(get(v, "p")?)?;
    let p = u8::try_from(p).map_err(|_| Error::BadCharacteristic(p as u32))?;
    let table: Vec<Vec<usize>> =
        serde_json::from_value(get(v, "table")?.clone()).map_err(|e| bad(format!("bad table: {e}")))?;
    if let Some(n) = v.get("order") {
        if usize_of(n)? != table.len() {
            return Err(Error::DimensionMismatch { expected: usize_of(n)?, found: table.len() });
        }
    }
    let labels = match v.get("labels") {
        None => None,
        Some(_) => Some(labels_from_json(v, table.len(), "g")?),
    };
    GroupTable::new(p, table, labels)
}

/// Rows of basis indices, `null` for a zero product.
pub fn product_table_to_json(t: &ProductTable) -> Value {
    let n = t.len();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| match t.get(i, j) {
                        Product::Zero => Value::Null,
                        Product::Index(k) => json!(k),
                    })
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn certificate_to_json(cert: &FmbCertificate) -> Value {
    json!({
        "basis": vectors_to_json(&cert.candidate.vectors),
        "unit_required": cert.candidate.unit_required,
        "depths": cert.depths,
        "layer_counts": cert.layer_counts,
        "table": product_table_to_json(&cert.table),
    })
}
