//! JSON documents for `basis`, `multable`, `dims`, `classify` and `stabilizer`.

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use octospin::orbits::{classify, stabilizer};
use octospin::spin8::spin8_basis;
use octospin::{Family, FamilyBasis, Matrix, Scalar, Spinor};

/// Exact values as `[num, den]` integers, floats as plain numbers.
pub fn coeff_json<T: Scalar>(c: &T) -> Value {
    match c.to_json() {
        Value::Array(parts) => Value::Array(
            parts
                .into_iter()
                .map(|p| match p.as_str().and_then(|s| s.parse::<i64>().ok()) {
                    Some(n) => Value::from(n),
                    None => p,
                })
                .collect(),
        ),
        other => other,
    }
}

/// Row-major entries in the same encoding as the structure constants.
fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(coeff_json).collect::<Vec<_>>(),
    })
}

/// Names the parameter each basis element switches on.
fn parameter_label(f: Family, k: usize) -> String {
    if k < 28 {
        let (mut i, mut rest) = (0, k);
        while rest >= 7 - i {
            rest -= 7 - i;
            i += 1;
        }
        return format!("a[{i},{}]", i + 1 + rest);
    }
    let k = k - 28;
    let scalars = f.scalar_names();
    if k < scalars.len() {
        return scalars[k].to_string();
    }
    let k = k - scalars.len();
    format!("{}[{}]", f.octonion_names()[k / 8], k % 8)
}

fn constants_json<T: Scalar>(b: &FamilyBasis<T>) -> Result<Value> {
    Ok(Value::Array(
        b.structure_constants()?
            .into_iter()
            .map(|(i, j, k, c)| json!({"i": i, "j": j, "k": k, "c": coeff_json(&c)}))
            .collect(),
    ))
}

pub fn basis<T: Scalar>(f: Family) -> Result<Value> {
    let b = FamilyBasis::<T>::new(f);
    let elements: Vec<Value> = if f == Family::Spin8 {
        spin8_basis::<T>()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                json!({
                    "index": k,
                    "parameter": parameter_label(f, k),
                    "a1": matrix_json(&a.a1),
                    "a2": matrix_json(&a.a2),
                    "a3": matrix_json(&a.a3),
                })
            })
            .collect()
    } else {
        b.elements
            .iter()
            .enumerate()
            .map(|(k, e)| {
                json!({
                    "index": k,
                    "parameter": parameter_label(f, k),
                    "matrix": matrix_json(&e.matrix),
                })
            })
            .collect()
    };
    Ok(json!({
        "family": f.name(),
        "dim": b.dim(),
        "matrix_size": f.matrix_size(),
        "mode": T::MODE.name(),
        "elements": elements,
        "structure_constants": constants_json(&b)?,
    }))
}

pub fn multable() -> Value {
    Value::Array(
        octospin::octonion::structure_constants()
            .into_iter()
            .map(|(i, j, k, c)| json!({"i": i, "j": j, "k": k, "c": c}))
            .collect(),
    )
}

pub fn dims() -> Value {
    let mut m = Map::new();
    for f in Family::ALL {
        m.insert(f.name().into(), Value::from(f.dim()));
    }
    Value::Object(m)
}

pub fn read_spinor<T: Scalar>(text: &str) -> Result<Spinor<T>> {
    let v: Value = serde_json::from_str(text).context("input is not valid JSON")?;
    Ok(Spinor::from_json(&v)?)
}

pub fn classify_json<T: Scalar>(f: Family, z: &Spinor<T>) -> Result<Value> {
    Ok(classify(f, z)?.to_json())
}

pub fn stabilizer_json<T: Scalar>(f: Family, z: &Spinor<T>) -> Result<Value> {
    let b = FamilyBasis::<T>::new(f);
    let st = stabilizer(&b, z)?;
    let basis: Vec<Value> = st
        .coefficients
        .iter()
        .map(|c| Value::Array(c.iter().map(coeff_json).collect()))
        .collect();
    Ok(json!({
        "family": f.name(),
        "mode": T::MODE.name(),
        "dimension": st.dim(),
        "closed": st.is_closed(),
        "basis": basis,
    }))
}
