//! JSON documents for matrices, presentations, modules and triples.
//!
//! Scalars are integers or strings such as `"3/2"` or `"-4"`. Fields are
//! written `"Q"` or `"Fp:101"`.
//!
//! ```text
//! matrices:     {"n": 2, "field": "Q", "matrices": [[["0","1"],["0","0"]]]}
//! presentation: {"generators": ["x"], "basis": ["1","x"], "rules": {"x^2": "0"}}
//! module:       {"algebra": 16 | {presentation}, "field": "Q",
//!                "images": [matrix per basis element]
//!                  or "generator_images": {"x": matrix, ...}}
//! triple:       {"field": "Q", "triple": [m, m, m]}  or  "Lx", "Ly", "Lz"
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{catalog_entry, AlgebraData, Presentation};
use crate::error::InputError;
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::module::ModuleRep;
use crate::normal_form::Triple;

fn err(path: &str, message: impl Into<String>) -> InputError {
    InputError::Field {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>, InputError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| err(&format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

/// Reads `"field"`, defaulting to ℚ (or to `default` when given).
pub fn parse_field(doc: &Map<String, Value>, default: Option<Field>) -> Result<Field, InputError> {
    match doc.get("field") {
        None => Ok(default.unwrap_or(Field::Rationals)),
        Some(Value::String(s)) => s
            .parse()
            .map_err(|e: crate::error::LinalgError| err("field", e.to_string())),
        Some(_) => Err(err("field", "expected a string such as \"Q\" or \"Fp:101\"")),
    }
}

pub fn parse_scalar(field: Field, v: &Value, path: &str) -> Result<FieldElement, InputError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(err(path, "expected an integer or a rational string")),
    };
    field.parse_element(&text).map_err(|e| err(path, e.to_string()))
}

pub fn parse_matrix(field: Field, v: &Value, path: &str) -> Result<Matrix, InputError> {
    let rows = array(v, path)?;
    let mut data = Vec::new();
    let mut cols = None;
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let entries = array(row, &rp)?;
        match cols {
            None => cols = Some(entries.len()),
            Some(c) if c != entries.len() => {
                return Err(err(&rp, format!("row has {} entries, expected {c}", entries.len())))
            }
            _ => {}
        }
        for (j, e) in entries.iter().enumerate() {
            data.push(parse_scalar(field, e, &format!("{rp}[{j}]"))?);
        }
    }
    Matrix::new(field, rows.len(), cols.unwrap_or(0), data).map_err(|e| err(path, e.to_string()))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|e| Value::String(e.to_string())).collect()))
            .collect(),
    )
}

/// A list of square matrices of one size.
#[derive(Clone, Debug)]
pub struct MatricesDoc {
    pub field: Field,
    pub n: usize,
    pub matrices: Vec<Matrix>,
}

pub fn parse_matrices_doc(text: &str, field_override: Option<Field>) -> Result<MatricesDoc, InputError> {
    let v = parse_json(text)?;
    let doc = object(&v, "$")?;
    let field = match field_override {
        Some(f) => f,
        None => parse_field(doc, None)?,
    };
    let mats = array(
        doc.get("matrices").ok_or_else(|| err("matrices", "missing"))?,
        "matrices",
    )?;
    let mut out = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        out.push(parse_matrix(field, m, &format!("matrices[{i}]"))?);
    }
    let n = match doc.get("n") {
        Some(v) => v.as_u64().ok_or_else(|| err("n", "expected a non-negative integer"))? as usize,
        None => out
            .first()
            .map(Matrix::rows)
            .ok_or_else(|| err("n", "missing and no matrices given"))?,
    };
    for (i, m) in out.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(err(
                &format!("matrices[{i}]"),
                format!("is {}x{}, expected {n}x{n}", m.rows(), m.cols()),
            ));
        }
    }
    Ok(MatricesDoc {
        field,
        n,
        matrices: out,
    })
}

pub fn parse_presentation(v: &Value, path: &str) -> Result<Presentation, InputError> {
    let doc = object(v, path)?;
    let get = |k: &str| doc.get(k).ok_or_else(|| err(&format!("{path}.{k}"), "missing"));
    let generators = string_list(get("generators")?, &format!("{path}.generators"))?;
    let basis = string_list(get("basis")?, &format!("{path}.basis"))?;
    let rules_v = object(get("rules")?, &format!("{path}.rules"))?;
    let mut rules = BTreeMap::new();
    for (k, r) in rules_v {
        let s = match r {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => return Err(err(&format!("{path}.rules.{k}"), "expected a string")),
        };
        rules.insert(k.clone(), s);
    }
    Presentation::from_map(&generators, &basis, &rules).map_err(|e| err(path, e.to_string()))
}

/// An algebra read from a presentation document.
pub fn parse_algebra_doc(text: &str, field_override: Option<Field>) -> Result<(Presentation, AlgebraData), InputError> {
    let v = parse_json(text)?;
    let doc = object(&v, "$")?;
    let field = match field_override {
        Some(f) => f,
        None => parse_field(doc, None)?,
    };
    let p = parse_presentation(&v, "$")?;
    let a = p.to_algebra(field).map_err(|e| err("$", e.to_string()))?;
    Ok((p, a))
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let rules: Map<String, Value> = p.rules().map(|(l, r)| (l, Value::String(r))).collect();
    json!({
        "generators": p.generators(),
        "basis": p.basis_labels(),
        "rules": rules,
    })
}

pub fn parse_rep_doc(text: &str, field_override: Option<Field>) -> Result<ModuleRep, InputError> {
    let v = parse_json(text)?;
    let doc = object(&v, "$")?;
    let field = match field_override {
        Some(f) => f,
        None => parse_field(doc, None)?,
    };
    let alg_v = doc.get("algebra").ok_or_else(|| err("algebra", "missing"))?;
    let (presentation, algebra) = match alg_v {
        Value::Number(n) => {
            let id = n.as_u64().ok_or_else(|| err("algebra", "expected a class id"))?;
            let e = catalog_entry(id as u32, field).map_err(|e| err("algebra", e.to_string()))?;
            (e.presentation, e.algebra)
        }
        Value::Object(o) if o.contains_key("class") => {
            let id = o["class"]
                .as_u64()
                .ok_or_else(|| err("algebra.class", "expected a class id"))?;
            let e = catalog_entry(id as u32, field).map_err(|e| err("algebra.class", e.to_string()))?;
            (e.presentation, e.algebra)
        }
        Value::Object(_) => {
            let p = parse_presentation(alg_v, "algebra")?;
            let a = p.to_algebra(field).map_err(|e| err("algebra", e.to_string()))?;
            (p, a)
        }
        _ => return Err(err("algebra", "expected a class id or a presentation")),
    };
    let algebra = Arc::new(algebra);
    if let Some(images) = doc.get("images") {
        let list = array(images, "images")?;
        let mut mats = Vec::new();
        for (i, m) in list.iter().enumerate() {
            mats.push(parse_matrix(field, m, &format!("images[{i}]"))?);
        }
        return ModuleRep::new(algebra, mats).map_err(|e| err("images", e.to_string()));
    }
    let gens_v = object(
        doc.get("generator_images")
            .ok_or_else(|| err("images", "missing (or give generator_images)"))?,
        "generator_images",
    )?;
    let mut mats = Vec::new();
    for g in presentation.generators() {
        let path = format!("generator_images.{g}");
        let m = gens_v.get(g).ok_or_else(|| err(&path, "missing"))?;
        mats.push(parse_matrix(field, m, &path)?);
    }
    ModuleRep::from_generator_images(algebra, &presentation, &mats).map_err(|e| err("generator_images", e.to_string()))
}

pub fn rep_to_json(rep: &ModuleRep, algebra: Value) -> Value {
    json!({
        "algebra": algebra,
        "field": rep.field().to_string(),
        "images": rep.images().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn parse_triple_doc(text: &str, field_override: Option<Field>) -> Result<Triple, InputError> {
    let v = parse_json(text)?;
    let doc = object(&v, "$")?;
    let field = match field_override {
        Some(f) => f,
        None => parse_field(doc, None)?,
    };
    let mats: Vec<Matrix> = if let Some(t) = doc.get("triple") {
        let list = array(t, "triple")?;
        if list.len() != 3 {
            return Err(err("triple", format!("expected 3 matrices, got {}", list.len())));
        }
        list.iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(field, m, &format!("triple[{i}]")))
            .collect::<Result<_, _>>()?
    } else {
        ["Lx", "Ly", "Lz"]
            .iter()
            .map(|k| parse_matrix(field, doc.get(*k).ok_or_else(|| err(k, "missing"))?, k))
            .collect::<Result<_, _>>()?
    };
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != 2 || m.cols() != 3 {
            return Err(err(
                &format!("triple[{i}]"),
                format!("is {}x{}, expected 2x3", m.rows(), m.cols()),
            ));
        }
    }
    let [a, b, c]: [Matrix; 3] = mats.try_into().expect("three");
    Ok([a, b, c])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_round_trip() {
        let doc = parse_matrices_doc(r#"{"n":2,"field":"Q","matrices":[[["1/2",0],[3,"-1"]]]}"#, None).unwrap();
        assert_eq!(doc.n, 2);
        let back = matrix_to_json(&doc.matrices[0]);
        assert_eq!(back, json!([["1/2", "0"], ["3", "-1"]]));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = parse_matrices_doc(r#"{"matrices":[[["1","x"]]]}"#, None).unwrap_err();
        assert!(e.to_string().starts_with("matrices[0][0][1]"), "{e}");
        let e = parse_matrices_doc(r#"{"matrices":[[[1,2],[3]]]}"#, None).unwrap_err();
        assert!(e.to_string().contains("matrices[0][1]"), "{e}");
        let e = parse_matrices_doc("{\n  \"n\": 2,\n  oops\n}", None).unwrap_err();
        assert!(matches!(e, InputError::Json { line: 3, .. }), "{e}");
        let e = parse_matrices_doc(r#"{"field":"Fp:100","matrices":[]}"#, None).unwrap_err();
        assert!(e.to_string().starts_with("field"), "{e}");
    }

    #[test]
    fn presentation_doc() {
        let (p, a) = parse_algebra_doc(
            r#"{"generators":["x","y"],"basis":["1","x","y","x^2","y^2"],"rules":{"x*y":"0","x^3":"0","y^3":"0"}}"#,
            None,
        )
        .unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.hilbert_samuel().unwrap(), vec![1, 2, 2]);
        let again = presentation_to_json(&p);
        let (_, b) = parse_algebra_doc(&again.to_string(), None).unwrap();
        assert_eq!(a.constants(), b.constants());
    }

    #[test]
    fn rep_doc_variants() {
        let by_id = r#"{"algebra": 9, "generator_images": {"x": [[0,0,0,0,0],[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]}}"#;
        let rep = parse_rep_doc(by_id, None).unwrap();
        assert!(rep.validate() && rep.is_faithful());
        let doc = rep_to_json(&rep, json!(9));
        let again = parse_rep_doc(&doc.to_string(), None).unwrap();
        assert_eq!(again.images(), rep.images());
        assert!(parse_rep_doc(r#"{"algebra": 12, "images": []}"#, None).is_err());
    }

    #[test]
    fn triple_doc() {
        let t = parse_triple_doc(
            r#"{"Lx":[[1,0,0],[0,1,0]],"Ly":[[0,0,1],[0,0,0]],"Lz":[[0,0,0],[0,0,1]]}"#,
            None,
        )
        .unwrap();
        assert_eq!(t, crate::normal_form::canonical_triple(Field::Rationals));
        assert!(parse_triple_doc(r#"{"triple":[[[1]],[[1]],[[1]]]}"#, None).is_err());
    }
}
