//! JSON forms of field specs, elements, code specs, matrices and
//! polynomials.
//!
//! Elements are little-endian arrays of F_q coordinates; a bare integer is
//! also accepted as the packed index. Moduli are little-endian coefficient
//! lists.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::{CodeSpec, Twist};
use crate::error::{Error, Result};
use crate::linpoly::LinearizedPoly;
use crate::moore::MatrixFqm;
use crate::tower::{Element, FieldTower, TowerParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub e: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_modulus: Option<Vec<u32>>,
}

fn one() -> usize {
    1
}

impl FieldSpec {
    /// Missing moduli fall back to the built-in defaults.
    pub fn to_params(&self) -> Result<TowerParams> {
        let defaults = TowerParams::with_default_moduli(self.p, self.e, self.m)?;
        Ok(TowerParams {
            base_modulus: self.base_modulus.clone().unwrap_or(defaults.base_modulus),
            top_modulus: self.top_modulus.clone().unwrap_or(defaults.top_modulus),
            ..defaults
        })
    }

    pub fn build(&self) -> Result<FieldTower> {
        FieldTower::new(self.to_params()?)
    }

    pub fn of(tower: &FieldTower) -> Self {
        let p = tower.params();
        FieldSpec {
            p: p.p,
            e: p.e,
            m: p.m,
            base_modulus: Some(p.base_modulus.clone()),
            top_modulus: Some(p.top_modulus.clone()),
        }
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_field_spec(v: &Value) -> Result<FieldSpec> {
    FieldSpec::deserialize(v).map_err(|e| Error::Parse(format!("field spec: {e}")))
}

pub fn element_to_json(tower: &FieldTower, x: Element) -> Value {
    json!(tower.coords(x))
}

pub fn element_from_json(tower: &FieldTower, v: &Value) -> Result<Element> {
    match v {
        Value::Number(n) => {
            let idx = n
                .as_u64()
                .and_then(|i| u32::try_from(i).ok())
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "element index {n} is not a small non-negative integer"
                    ))
                })?;
            tower.element(idx)
        }
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|c| {
                    c.as_u64()
                        .and_then(|i| u32::try_from(i).ok())
                        .ok_or_else(|| {
                            Error::Parse(format!("coordinate {c} is not a non-negative integer"))
                        })
                })
                .collect::<Result<Vec<u32>>>()?;
            tower.from_coords(&coords)
        }
        other => Err(Error::Parse(format!(
            "expected an element (coordinate array or index), got {other}"
        ))),
    }
}

pub fn elements_to_json(tower: &FieldTower, xs: &[Element]) -> Value {
    Value::Array(xs.iter().map(|&x| element_to_json(tower, x)).collect())
}

pub fn elements_from_json(tower: &FieldTower, v: &Value) -> Result<Vec<Element>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of elements, got {v}")))?
        .iter()
        .map(|x| element_from_json(tower, x))
        .collect()
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("missing or non-integer \"{key}\"")))
}

/// `{"alpha":[...], "k":2, "h":0, "twists":[{"t":0,"eta":[...]}]}`; `h`
/// and `twists` may be omitted for a Gabidulin code.
pub fn code_spec_from_json(tower: &FieldTower, v: &Value) -> Result<CodeSpec> {
    if !v.is_object() {
        return Err(Error::Parse(format!(
            "code spec must be an object, got {v}"
        )));
    }
    let alpha = elements_from_json(
        tower,
        v.get("alpha")
            .ok_or_else(|| Error::Parse("missing \"alpha\"".into()))?,
    )?;
    let k = usize_field(v, "k")?;
    let h = if v.get("h").is_some() {
        usize_field(v, "h")?
    } else {
        0
    };
    let twists = match v.get("twists") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|tw| {
                Ok(Twist {
                    t: usize_field(tw, "t")?,
                    eta: element_from_json(
                        tower,
                        tw.get("eta")
                            .ok_or_else(|| Error::Parse("twist without \"eta\"".into()))?,
                    )?,
                })
            })
            .collect::<Result<_>>()?,
        Some(other) => {
            return Err(Error::Parse(format!(
                "\"twists\" must be an array, got {other}"
            )))
        }
    };
    Ok(CodeSpec::twisted(alpha, k, h, twists))
}

pub fn code_spec_to_json(tower: &FieldTower, spec: &CodeSpec) -> Value {
    json!({
        "alpha": elements_to_json(tower, &spec.alpha),
        "k": spec.k,
        "h": spec.h,
        "twists": spec
            .twists
            .iter()
            .map(|tw| json!({"t": tw.t, "eta": element_to_json(tower, tw.eta)}))
            .collect::<Vec<_>>(),
    })
}

pub fn matrix_to_json(tower: &FieldTower, m: &MatrixFqm) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| elements_to_json(tower, r))
            .collect(),
    )
}

pub fn matrix_from_json(tower: &FieldTower, v: &Value) -> Result<MatrixFqm> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?
        .iter()
        .map(|r| elements_from_json(tower, r))
        .collect::<Result<Vec<_>>>()?;
    MatrixFqm::from_rows(rows)
}

/// Index i holds the coefficient of x^{[i]}.
pub fn poly_to_json(tower: &FieldTower, f: &LinearizedPoly) -> Value {
    elements_to_json(tower, f.coeffs())
}

pub fn poly_from_json(tower: &FieldTower, v: &Value) -> Result<LinearizedPoly> {
    Ok(LinearizedPoly::new(elements_from_json(tower, v)?))
}
