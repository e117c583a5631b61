//! JSON schemas for matrices, tuples, phase multisets, configurations, and
//! arrangements. Floats are printed with 17 significant digits so output is
//! reproducible byte for byte and round-trips exactly through `f64`.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::eigenmap::PhaseMultiset;
use crate::harris::{HarrisBlock, HarrisConfiguration, MultiArrangement, PlaneArrangement};
use crate::scalar::{C, Real};
use crate::unitary::{UnitaryMatrix, UnitaryTuple};

fn bad(msg: impl Into<String>) -> CoreError {
    CoreError::Invalid(msg.into())
}

/// A float as a JSON number literal with 17 significant digits.
pub fn float_to_value(x: f64) -> Value {
    let literal = format!("{x:.16e}");
    Value::Number(Number::from_str(&literal).expect("finite float literal"))
}

pub fn value_to_float(v: &Value) -> Result<f64, CoreError> {
    v.as_f64().ok_or_else(|| bad("expected a number"))
}

fn real_to_value<R: Real>(x: R) -> Value {
    float_to_value(x.to_f64().expect("finite"))
}

fn value_to_real<R: Real>(v: &Value) -> Result<R, CoreError> {
    Ok(R::of(value_to_float(v)?))
}

fn complex_to_value<R: Real>(z: C<R>) -> Value {
    Value::Array(vec![real_to_value(z.re), real_to_value(z.im)])
}

fn value_to_complex<R: Real>(v: &Value) -> Result<C<R>, CoreError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| bad("complex entries are [re, im] pairs"))?;
    Ok(C::new(value_to_real(&pair[0])?, value_to_real(&pair[1])?))
}

pub fn complex_entry_to_value<R: Real>(z: C<R>) -> Value {
    complex_to_value(z)
}

fn matrix_entries_to_value<R: Real>(m: &CMatrix<R>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| complex_to_value(m[(i, j)])).collect())
            })
            .collect(),
    )
}

fn value_to_matrix_entries<R: Real>(
    v: &Value,
    rows: usize,
    cols: usize,
) -> Result<CMatrix<R>, CoreError> {
    let data = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if data.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", data.len())));
    }
    let mut m = CMatrix::zeros(rows, cols);
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad("matrix rows must be arrays"))?;
        if row.len() != cols {
            return Err(bad(format!(
                "row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = value_to_complex(e)?;
        }
    }
    Ok(m)
}

/// Matrix-tuple format: `{"n", "k", "matrices": [M_1, ..., M_k]}` with each
/// matrix an n x n array of [re, im] pairs, row-major.
pub fn tuple_to_value<R: Real>(t: &UnitaryTuple<R>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(t.n() as u64));
    obj.insert("k".into(), Value::from(t.k() as u64));
    obj.insert(
        "matrices".into(),
        Value::Array(
            t.members()
                .iter()
                .map(|m| matrix_entries_to_value(m.matrix()))
                .collect(),
        ),
    );
    Value::Object(obj)
}

/// Parse the matrix-tuple layout without enforcing unitarity; shape checks
/// only. Used where unitarity itself is the question.
pub fn raw_tuple_matrices_from_value<R: Real>(
    v: &Value,
) -> Result<Vec<CMatrix<R>>, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"k\""))? as usize;
    let mats = obj
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"matrices\" array"))?;
    if mats.len() != k {
        return Err(bad(format!("expected {k} matrices, found {}", mats.len())));
    }
    if n == 0 || k == 0 {
        return Err(bad("n and k must be at least 1"));
    }
    mats.iter()
        .map(|mv| value_to_matrix_entries(mv, n, n))
        .collect()
}

pub fn tuple_from_value<R: Real>(v: &Value, tol: R) -> Result<UnitaryTuple<R>, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"k\""))? as usize;
    let mats = obj
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"matrices\" array"))?;
    if mats.len() != k {
        return Err(bad(format!("expected {k} matrices, found {}", mats.len())));
    }
    if n == 0 || k == 0 {
        return Err(bad("n and k must be at least 1"));
    }
    let members = mats
        .iter()
        .map(|mv| {
            let m = value_to_matrix_entries(mv, n, n)?;
            UnitaryMatrix::new(m, tol)
        })
        .collect::<Result<Vec<_>, _>>()?;
    UnitaryTuple::new(members)
}

/// A single matrix travels as a k = 1 tuple.
pub fn matrix_to_value<R: Real>(u: &UnitaryMatrix<R>) -> Value {
    let t = UnitaryTuple::new(vec![u.clone()]).expect("k = 1");
    tuple_to_value(&t)
}

pub fn single_matrix_from_value<R: Real>(
    v: &Value,
    tol: R,
) -> Result<UnitaryMatrix<R>, CoreError> {
    let t = tuple_from_value(v, tol)?;
    if t.k() != 1 {
        return Err(CoreError::Shape(format!(
            "expected a single matrix (k = 1 tuple), found k = {}",
            t.k()
        )));
    }
    Ok(t.member(0).clone())
}

/// Phase multiset: `{"n", "phases": [...]}` sorted ascending.
pub fn phases_to_value<R: Real>(p: &PhaseMultiset<R>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(p.n() as u64));
    obj.insert(
        "phases".into(),
        Value::Array(p.phases().iter().map(|&x| real_to_value(x)).collect()),
    );
    Value::Object(obj)
}

pub fn phases_from_value<R: Real>(v: &Value) -> Result<PhaseMultiset<R>, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let phases = obj
        .get("phases")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"phases\" array"))?
        .iter()
        .map(value_to_real)
        .collect::<Result<Vec<R>, _>>()?;
    if phases.len() != n {
        return Err(bad(format!("expected {n} phases, found {}", phases.len())));
    }
    PhaseMultiset::new(phases)
}

/// Basis columns as a list of vectors: `[[ [re,im], ... ], ...]`, one inner
/// list per basis vector of length n.
fn basis_to_value<R: Real>(b: &CMatrix<R>) -> Value {
    Value::Array(
        (0..b.cols())
            .map(|j| Value::Array((0..b.rows()).map(|i| complex_to_value(b[(i, j)])).collect()))
            .collect(),
    )
}

fn value_to_basis<R: Real>(v: &Value, n: usize) -> Result<CMatrix<R>, CoreError> {
    let vecs = v
        .as_array()
        .ok_or_else(|| bad("basis must be an array of vectors"))?;
    let mut m = CMatrix::zeros(n, vecs.len());
    for (j, col) in vecs.iter().enumerate() {
        let col = col
            .as_array()
            .ok_or_else(|| bad("basis vectors must be arrays"))?;
        if col.len() != n {
            return Err(bad(format!(
                "basis vector {j} has length {}, expected {n}",
                col.len()
            )));
        }
        for (i, e) in col.iter().enumerate() {
            m[(i, j)] = value_to_complex(e)?;
        }
    }
    Ok(m)
}

/// Configuration: `{"n", "blocks": [{"basis": ..., "t": ...}, ...]}`.
pub fn config_to_value<R: Real>(c: &HarrisConfiguration<R>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(c.n as u64));
    obj.insert(
        "blocks".into(),
        Value::Array(
            c.blocks
                .iter()
                .map(|b| {
                    let mut bo = Map::new();
                    bo.insert("basis".into(), basis_to_value(&b.basis));
                    bo.insert("t".into(), real_to_value(b.phase));
                    Value::Object(bo)
                })
                .collect(),
        ),
    );
    Value::Object(obj)
}

pub fn config_from_value<R: Real>(
    v: &Value,
    tol: R,
) -> Result<HarrisConfiguration<R>, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let blocks = obj
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"blocks\" array"))?
        .iter()
        .map(|bv| {
            let bo = bv.as_object().ok_or_else(|| bad("blocks must be objects"))?;
            let basis = value_to_basis(
                bo.get("basis").ok_or_else(|| bad("missing block \"basis\""))?,
                n,
            )?;
            let phase = value_to_real(bo.get("t").ok_or_else(|| bad("missing block \"t\""))?)?;
            Ok(HarrisBlock { basis, phase })
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    let cfg = HarrisConfiguration { n, blocks };
    cfg.validate(tol)?;
    Ok(cfg)
}

/// Arrangement: `{"n", "planes": [basis, ...]}`.
pub fn arrangement_to_value<R: Real>(a: &PlaneArrangement<R>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(a.n as u64));
    obj.insert(
        "planes".into(),
        Value::Array(a.planes.iter().map(basis_to_value).collect()),
    );
    Value::Object(obj)
}

pub fn arrangement_from_value<R: Real>(
    v: &Value,
    tol: R,
) -> Result<PlaneArrangement<R>, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let planes = obj
        .get("planes")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"planes\" array"))?
        .iter()
        .map(|p| value_to_basis(p, n))
        .collect::<Result<Vec<_>, _>>()?;
    let arr = PlaneArrangement { n, planes };
    arr.validate(tol)?;
    Ok(arr)
}

/// Multi-arrangement: `{"n", "members": [{"planes": [...]}, ...]}`.
pub fn multiarrangement_to_value<R: Real>(m: &MultiArrangement<R>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(m.n as u64));
    obj.insert(
        "members".into(),
        Value::Array(
            m.members
                .iter()
                .map(|a| {
                    let mut mo = Map::new();
                    mo.insert(
                        "planes".into(),
                        Value::Array(a.planes.iter().map(basis_to_value).collect()),
                    );
                    Value::Object(mo)
                })
                .collect(),
        ),
    );
    Value::Object(obj)
}

pub fn multiarrangement_from_value<R: Real>(
    v: &Value,
    tol: R,
) -> Result<MultiArrangement<R>, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let members = obj
        .get("members")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"members\" array"))?
        .iter()
        .map(|mv| {
            let mo = mv.as_object().ok_or_else(|| bad("members must be objects"))?;
            let planes = mo
                .get("planes")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing member \"planes\""))?
                .iter()
                .map(|p| value_to_basis(p, n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PlaneArrangement { n, planes })
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    let m = MultiArrangement { n, members };
    m.validate(tol)?;
    Ok(m)
}

/// Compact single-line rendering used by all command output.
pub fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable value")
}
