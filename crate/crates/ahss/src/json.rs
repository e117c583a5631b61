//! JSON schemas for the exact-arithmetic types. Integers are serialized as
//! JSON integer literals of unbounded size (parsed exactly, never through
//! floating point).

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::assemble::AhssResult;
use crate::chain::ChainComplex;
use crate::error::AhssError;
use crate::graded::{Annotation, GradedAbelianGroup, GroupEntry, Rank};
use crate::matrix::{Z, ZMatrix};
use crate::snf::{AbelianInvariants, SmithDecomposition};

fn bad(msg: impl Into<String>) -> AhssError {
    AhssError::Json(msg.into())
}

pub fn z_to_value(z: &Z) -> Value {
    let n = Number::from_str(&z.to_string()).expect("integer literal");
    Value::Number(n)
}

pub fn value_to_z(v: &Value) -> Result<Z, AhssError> {
    let n = v.as_number().ok_or_else(|| bad("expected an integer"))?;
    Z::from_str(&n.to_string()).map_err(|_| bad(format!("not an integer: {n}")))
}

fn value_to_usize(v: &Value) -> Result<usize, AhssError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad("expected a nonnegative integer"))
}

pub fn intmatrix_to_value(m: &ZMatrix) -> Value {
    let mut obj = Map::new();
    obj.insert("rows".into(), Value::from(m.rows() as u64));
    obj.insert("cols".into(), Value::from(m.cols() as u64));
    obj.insert("entries".into(), entries_to_value(m));
    Value::Object(obj)
}

fn entries_to_value(m: &ZMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| z_to_value(&m[(i, j)]))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn intmatrix_from_value(v: &Value) -> Result<ZMatrix, AhssError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let rows = value_to_usize(obj.get("rows").ok_or_else(|| bad("missing \"rows\""))?)?;
    let cols = value_to_usize(obj.get("cols").ok_or_else(|| bad("missing \"cols\""))?)?;
    let entries = obj
        .get("entries")
        .ok_or_else(|| bad("missing \"entries\""))?;
    let m = entries_from_value(entries)?;
    if m.rows() != rows || m.cols() != cols {
        return Err(bad(format!(
            "entries are {}x{} but header says {}x{}",
            m.rows(),
            m.cols(),
            rows,
            cols
        )));
    }
    Ok(m)
}

fn entries_from_value(v: &Value) -> Result<ZMatrix, AhssError> {
    let rows = v.as_array().ok_or_else(|| bad("entries must be an array"))?;
    let mut data = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| bad("each row must be an array"))?;
        let parsed: Result<Vec<Z>, _> = row.iter().map(value_to_z).collect();
        data.push(parsed?);
    }
    ZMatrix::from_rows(data).map_err(|e| bad(e.to_string()))
}

pub fn chain_to_value(c: &ChainComplex) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "dims".into(),
        Value::Array(c.dims().iter().map(|&d| Value::from(d as u64)).collect()),
    );
    let mut bounds = Map::new();
    for p in 1..=c.top_degree() {
        bounds.insert(p.to_string(), entries_to_value(c.boundary(p).unwrap()));
    }
    obj.insert("boundaries".into(), Value::Object(bounds));
    Value::Object(obj)
}

pub fn chain_from_value(v: &Value) -> Result<ChainComplex, AhssError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let dims_v = obj
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"dims\" array"))?;
    let dims: Result<Vec<usize>, _> = dims_v.iter().map(value_to_usize).collect();
    let dims = dims?;
    let bounds = obj
        .get("boundaries")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing \"boundaries\" object"))?;
    let mut boundaries = Vec::new();
    for p in 1..dims.len() {
        let key = p.to_string();
        let m = match bounds.get(&key) {
            Some(bv) => entries_from_value(bv)?,
            // Omitted boundary maps are zero.
            None => ZMatrix::zeros(dims[p - 1], dims[p]),
        };
        boundaries.push(m);
    }
    ChainComplex::new(dims, boundaries).map_err(|e| bad(e.to_string()))
}

pub fn graded_to_value(g: &GradedAbelianGroup) -> Value {
    let mut degrees = BTreeMap::new();
    for (d, e) in g.iter() {
        degrees.insert(d.to_string(), entry_to_value(e));
    }
    let mut obj = Map::new();
    obj.insert(
        "degrees".into(),
        Value::Object(degrees.into_iter().collect()),
    );
    Value::Object(obj)
}

fn entry_to_value(e: &GroupEntry) -> Value {
    let mut obj = Map::new();
    let rank = match e.rank {
        Rank::Finite(r) => Value::from(r),
        Rank::Countable => Value::String("countable".into()),
    };
    obj.insert("rank".into(), rank);
    obj.insert(
        "torsion".into(),
        Value::Array(e.torsion.iter().map(z_to_value).collect()),
    );
    obj.insert(
        "annotation".into(),
        match &e.annotation {
            Some(a) => Value::String(a.to_string()),
            None => Value::Null,
        },
    );
    Value::Object(obj)
}

pub fn graded_from_value(v: &Value) -> Result<GradedAbelianGroup, AhssError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let degrees = obj
        .get("degrees")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing \"degrees\" object"))?;
    let mut out = GradedAbelianGroup::zero();
    for (k, ev) in degrees {
        let degree: u32 = k
            .parse()
            .map_err(|_| bad(format!("bad degree key {k:?}")))?;
        out.set(degree, entry_from_value(ev)?);
    }
    out.validate()?;
    Ok(out)
}

fn entry_from_value(v: &Value) -> Result<GroupEntry, AhssError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let rank = match obj.get("rank") {
        Some(Value::String(s)) if s == "countable" => Rank::Countable,
        Some(rv) => Rank::Finite(
            rv.as_u64()
                .ok_or_else(|| bad("rank must be a nonnegative integer or \"countable\""))?,
        ),
        None => return Err(bad("missing \"rank\"")),
    };
    let torsion = match obj.get("torsion") {
        Some(tv) => tv
            .as_array()
            .ok_or_else(|| bad("torsion must be an array"))?
            .iter()
            .map(value_to_z)
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let annotation = match obj.get("annotation") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(
            s.parse::<Annotation>()
                .map_err(|e| bad(e.to_string()))?,
        ),
        Some(_) => return Err(bad("annotation must be a string or null")),
    };
    Ok(GroupEntry {
        rank,
        torsion,
        annotation,
    })
}

pub fn snf_to_value(s: &SmithDecomposition<Z>) -> Value {
    let mut obj = Map::new();
    obj.insert("d".into(), intmatrix_to_value(&s.d));
    obj.insert("u".into(), intmatrix_to_value(&s.u));
    obj.insert("v".into(), intmatrix_to_value(&s.v));
    obj.insert(
        "invariant_factors".into(),
        Value::Array(s.invariant_factors.iter().map(z_to_value).collect()),
    );
    Value::Object(obj)
}

pub fn invariants_to_value(inv: &AbelianInvariants<Z>) -> Value {
    let mut obj = Map::new();
    obj.insert("rank".into(), Value::from(inv.rank as u64));
    obj.insert(
        "torsion".into(),
        Value::Array(inv.torsion.iter().map(z_to_value).collect()),
    );
    Value::Object(obj)
}

pub fn ahss_result_to_value(r: &AhssResult) -> Value {
    let mut obj = match graded_to_value(&r.groups) {
        Value::Object(o) => o,
        _ => unreachable!(),
    };
    obj.insert(
        "warning".into(),
        match &r.warning {
            Some(w) => Value::String(w.clone()),
            None => Value::Null,
        },
    );
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{rep_ring_fixture, GroupName};

    #[test]
    fn intmatrix_round_trip() {
        let m = ZMatrix::from_i64(2, 3, &[1, -2, 3, 0, 99, -100]);
        let v = intmatrix_to_value(&m);
        let back = intmatrix_from_value(&v).unwrap();
        assert_eq!(m, back);
        // Reprint is byte-identical.
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&intmatrix_to_value(&back)).unwrap()
        );
    }

    #[test]
    fn big_entries_survive() {
        let huge: Z = Z::from(1) << 100;
        let m = ZMatrix::from_rows(vec![vec![huge.clone()]]).unwrap();
        let v = intmatrix_to_value(&m);
        let text = serde_json::to_string(&v).unwrap();
        let back = intmatrix_from_value(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back[(0, 0)], huge);
    }

    #[test]
    fn graded_round_trip() {
        for name in [
            GroupName::Heisenberg,
            GroupName::ZSemidirectZ2,
            GroupName::Z2SemidirectZ4,
            GroupName::Free(4),
        ] {
            let g = rep_ring_fixture(&name);
            let v = graded_to_value(&g);
            let back = graded_from_value(&v).unwrap();
            assert_eq!(g, back, "round trip failed for {name}");
        }
    }

    #[test]
    fn chain_round_trip() {
        let c = crate::fixtures::z2_semidirect_z4_complex();
        let v = chain_to_value(&c);
        let back = chain_from_value(&v).unwrap();
        assert_eq!(back.dims(), c.dims());
        for p in 1..=c.top_degree() {
            assert_eq!(back.boundary(p).unwrap(), c.boundary(p).unwrap());
        }
    }

    #[test]
    fn float_entry_rejected() {
        let v: Value = serde_json::from_str(
            r#"{"rows":1,"cols":1,"entries":[[1.5]]}"#,
        )
        .unwrap();
        assert!(intmatrix_from_value(&v).is_err());
    }
}
