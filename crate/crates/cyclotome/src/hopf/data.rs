//! The JSON data-file format and the bundled algebras.
//!
//! ```json
//! {
//!   "name": "z2_trivial", "description": "...", "field": "Q",
//!   "dim": 2, "basis": ["1", "g"],
//!   "m": [[i, j, k, "c"], ...],        // e_i e_j has coefficient c on e_k
//!   "u": [[k, "c"]],
//!   "Delta": [[i, j, k, "c"], ...],    // Δ(e_i) has coefficient c on e_j ⊗ e_k
//!   "epsilon": [[k, "c"]],
//!   "S": [[i, j, "c"]], "S_inv": [[i, j, "c"]],
//!   "R": [[i, j, "c"]], "R_inv": [[i, j, "c"]],
//!   "theta": [[k, "c"]], "theta_inv": [[k, "c"]],
//!   "simples": [{"dim": 1, "action": [[[r, c, "v"], ...], ...]}]
//! }
//! ```

use super::{HopfAlgebra, HopfParts};
use crate::linalg::map::normalize;
use crate::linalg::{Elem, Field, LinalgError, LinearMap, SparseVec, TensorShape};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DataError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("data file: {0}")]
    Schema(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("no bundled algebra named {0:?}")]
    Unknown(String),
}

const BUNDLED: [(&str, &str); 4] = [
    ("z2_trivial", include_str!("../../data/z2_trivial.json")),
    ("z2_semion", include_str!("../../data/z2_semion.json")),
    ("sweedler_h4", include_str!("../../data/sweedler_h4.json")),
    ("double_z2", include_str!("../../data/double_z2.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// One of the algebras shipped with the crate.
pub fn bundled(name: &str) -> Result<HopfAlgebra, DataError> {
    let (_, text) = BUNDLED.iter().find(|(n, _)| *n == name).ok_or_else(|| DataError::Unknown(name.into()))?;
    HopfAlgebra::from_json_str(text)
}

fn schema(m: impl Into<String>) -> DataError {
    DataError::Schema(m.into())
}

fn coef(field: &Field, v: &Value) -> Result<Elem, DataError> {
    match v {
        Value::String(s) => Ok(field.parse(s)?),
        Value::Number(n) => Ok(field.parse(&n.to_string())?),
        _ => Err(schema(format!("coefficient {v} is neither a string nor a number"))),
    }
}

fn index(v: &Value, bound: usize, what: &str) -> Result<usize, DataError> {
    let i = v.as_u64().ok_or_else(|| schema(format!("{what}: index {v} is not a nonnegative integer")))? as usize;
    if i >= bound {
        return Err(schema(format!("{what}: index {i} out of range (dim {bound})")));
    }
    Ok(i)
}

fn rows<'a>(doc: &'a Value, key: &str, width: usize) -> Result<Vec<&'a Vec<Value>>, DataError> {
    let arr = doc.get(key).and_then(Value::as_array).ok_or_else(|| schema(format!("missing array {key:?}")))?;
    arr.iter()
        .map(|r| r.as_array().filter(|a| a.len() == width).ok_or_else(|| schema(format!("{key}: every entry needs {width} fields"))))
        .collect()
}

fn vector(doc: &Value, key: &str, field: &Field, dim: usize) -> Result<SparseVec, DataError> {
    let mut acc = Vec::new();
    for r in rows(doc, key, 2)? {
        acc.push((index(&r[0], dim, key)?, coef(field, &r[1])?));
    }
    Ok(normalize(field, acc))
}

fn matrix(doc: &Value, key: &str, field: &Field, dim: usize) -> Result<Vec<SparseVec>, DataError> {
    let mut cols = vec![Vec::new(); dim];
    for r in rows(doc, key, 3)? {
        cols[index(&r[0], dim, key)?].push((index(&r[1], dim, key)?, coef(field, &r[2])?));
    }
    Ok(cols.into_iter().map(|c| normalize(field, c)).collect())
}

fn pair_vector(doc: &Value, key: &str, field: &Field, dim: usize) -> Result<SparseVec, DataError> {
    let mut acc = Vec::new();
    for r in rows(doc, key, 3)? {
        acc.push((index(&r[0], dim, key)? * dim + index(&r[1], dim, key)?, coef(field, &r[2])?));
    }
    Ok(normalize(field, acc))
}

impl HopfAlgebra {
    pub fn from_json_str(text: &str) -> Result<HopfAlgebra, DataError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| DataError::Json(e.to_string()))?;
        HopfAlgebra::from_json(&doc)
    }

    pub fn from_json(doc: &Value) -> Result<HopfAlgebra, DataError> {
        let field = Field::from_name(doc.get("field").and_then(Value::as_str).ok_or_else(|| schema("missing \"field\""))?)?;
        let dim = doc.get("dim").and_then(Value::as_u64).ok_or_else(|| schema("missing \"dim\""))? as usize;
        if dim == 0 {
            return Err(schema("dimension must be positive"));
        }
        let basis: Vec<String> = match doc.get("basis").and_then(Value::as_array) {
            Some(b) => b.iter().map(|x| x.as_str().map(String::from).ok_or_else(|| schema("basis labels must be strings"))).collect::<Result<_, _>>()?,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        if basis.len() != dim {
            return Err(schema(format!("{} basis labels for dimension {dim}", basis.len())));
        }
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for r in rows(doc, "m", 4)? {
            let (i, j, k) = (index(&r[0], dim, "m")?, index(&r[1], dim, "m")?, index(&r[2], dim, "m")?);
            mult[i][j].push((k, coef(&field, &r[3])?));
        }
        let mult = mult.into_iter().map(|row| row.into_iter().map(|v| normalize(&field, v)).collect()).collect();
        let mut comult = vec![Vec::new(); dim];
        for r in rows(doc, "Delta", 4)? {
            let (i, j, k) = (index(&r[0], dim, "Delta")?, index(&r[1], dim, "Delta")?, index(&r[2], dim, "Delta")?);
            comult[i].push((j * dim + k, coef(&field, &r[3])?));
        }
        let comult = comult.into_iter().map(|v| normalize(&field, v)).collect();
        let eps = vector(doc, "epsilon", &field, dim)?;
        let mut counit = vec![field.zero(); dim];
        for (k, c) in eps {
            counit[k] = c;
        }
        let mut simples = Vec::new();
        if let Some(arr) = doc.get("simples").and_then(Value::as_array) {
            for (s, m) in arr.iter().enumerate() {
                let sd = m.get("dim").and_then(Value::as_u64).ok_or_else(|| schema(format!("simple {s}: missing dim")))? as usize;
                let acts = m.get("action").and_then(Value::as_array).ok_or_else(|| schema(format!("simple {s}: missing action")))?;
                if acts.len() != dim {
                    return Err(schema(format!("simple {s}: need one matrix per basis element")));
                }
                let mut action = Vec::new();
                for a in acts {
                    let mut trip = Vec::new();
                    for e in a.as_array().ok_or_else(|| schema(format!("simple {s}: matrix must be a list")))? {
                        let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| schema(format!("simple {s}: entries are [r, c, v]")))?;
                        trip.push((index(&e[0], sd, "simple")?, index(&e[1], sd, "simple")?, coef(&field, &e[2])?));
                    }
                    action.push(LinearMap::from_triplets(&field, TensorShape::flat(sd), TensorShape::flat(sd), trip)?);
                }
                simples.push(action);
            }
        }
        Ok(HopfAlgebra::from_parts(HopfParts {
            name: doc.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string(),
            description: doc.get("description").and_then(Value::as_str).unwrap_or("").to_string(),
            unit: vector(doc, "u", &field, dim)?,
            antipode: matrix(doc, "S", &field, dim)?,
            antipode_inv: matrix(doc, "S_inv", &field, dim)?,
            r: pair_vector(doc, "R", &field, dim)?,
            r_inv: pair_vector(doc, "R_inv", &field, dim)?,
            theta: vector(doc, "theta", &field, dim)?,
            theta_inv: vector(doc, "theta_inv", &field, dim)?,
            field,
            basis,
            mult,
            comult,
            counit,
            simples,
        }))
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        let d = self.dim();
        let r = |x: &Elem| Value::String(f.render(x));
        let vec1 = |v: &SparseVec| -> Vec<Value> { v.iter().map(|(k, c)| json!([k, r(c)])).collect() };
        let vec2 = |v: &SparseVec| -> Vec<Value> { v.iter().map(|(k, c)| json!([k / d, k % d, r(c)])).collect() };
        let mat = |m: &[SparseVec]| -> Vec<Value> {
            m.iter().enumerate().flat_map(|(i, col)| col.iter().map(move |(j, c)| json!([i, j, r(c)]))).collect()
        };
        let mut m = Vec::new();
        let mut delta = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &self.mult[i][j] {
                    m.push(json!([i, j, k, r(c)]));
                }
            }
            for (jk, c) in &self.comult[i] {
                delta.push(json!([i, jk / d, jk % d, r(c)]));
            }
        }
        let eps: Vec<Value> = self.counit.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| json!([k, r(c)])).collect();
        let simples: Vec<Value> = self
            .simples
            .iter()
            .map(|s| {
                let acts: Vec<Value> = s
                    .action
                    .iter()
                    .map(|a| Value::Array(a.entries().into_iter().map(|(i, j, c)| json!([i, j, r(&c)])).collect()))
                    .collect();
                json!({"dim": s.dim(), "action": acts})
            })
            .collect();
        json!({
            "name": self.name, "description": self.description, "field": f.name(),
            "dim": d, "basis": self.basis,
            "m": m, "u": vec1(&self.unit), "Delta": delta, "epsilon": eps,
            "S": mat(&self.antipode), "S_inv": mat(&self.antipode_inv),
            "R": vec2(&self.r), "R_inv": vec2(&self.r_inv),
            "theta": vec1(&self.theta), "theta_inv": vec1(&self.theta_inv),
            "simples": simples,
        })
    }
}
