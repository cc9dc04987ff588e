use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::Representation;
use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::quiver::Quiver;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Prime(p) => json!({"type": "prime", "p": p}),
        Field::Rational => json!({"type": "rational"}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v.get("type").and_then(Value::as_str) {
        Some("prime") => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("prime field needs an integer `p`".into()))?;
            Field::prime(p)
        }
        Some("rational") => Ok(Field::Rational),
        _ => parse_err("field `type` must be \"prime\" or \"rational\""),
    }
}

fn parse_matrix(f: Field, v: Option<&Value>, rows: usize, cols: usize, id: &str) -> Result<Matrix> {
    let Some(v) = v else {
        if rows * cols == 0 {
            return Ok(Matrix::zeros(f, rows, cols));
        }
        return parse_err(format!("missing matrix for arrow `{id}`"));
    };
    let rs = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("matrix for `{id}` must be an array of rows")))?;
    if rows == 0 && rs.iter().all(|r| r.as_array().is_some_and(|r| r.is_empty())) {
        return Ok(Matrix::zeros(f, 0, cols));
    }
    if rs.len() != rows {
        return parse_err(format!("arrow `{id}`: expected {rows} rows, found {}", rs.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let r = r
            .as_array()
            .ok_or_else(|| Error::Parse(format!("arrow `{id}`: row is not an array")))?;
        if r.len() != cols {
            return parse_err(format!("arrow `{id}`: expected {cols} columns, found {}", r.len()));
        }
        for e in r {
            data.push(f.parse_entry(e)?);
        }
    }
    Matrix::from_vec(f, rows, cols, data)
}

impl Representation {
    pub fn to_json(&self) -> Value {
        let q = self.quiver();
        let dims: Map<String, Value> = q
            .vertices()
            .iter()
            .zip(self.dims())
            .map(|(v, &d)| (v.clone(), Value::from(d)))
            .collect();
        let maps: Map<String, Value> = q
            .arrows()
            .iter()
            .zip(self.maps())
            .map(|(a, m)| (a.id.clone(), m.to_json()))
            .collect();
        json!({
            "quiver": q.to_json(),
            "field": field_to_json(self.field()),
            "dims": dims,
            "maps": maps,
        })
    }

    pub fn from_json(v: &Value) -> Result<Representation> {
        let q = Quiver::from_json(
            v.get("quiver")
                .ok_or_else(|| Error::Parse("representation needs `quiver`".into()))?,
        )?;
        let f = field_from_json(
            v.get("field")
                .ok_or_else(|| Error::Parse("representation needs `field`".into()))?,
        )?;
        Representation::from_json_on(Arc::new(q), f, v)
    }

    /// Parses `dims` and `maps` of `v` against an already known quiver and field.
    pub fn from_json_on(q: Arc<Quiver>, f: Field, v: &Value) -> Result<Representation> {
        let dims_v = v.get("dims").and_then(Value::as_object);
        let mut dims = Vec::with_capacity(q.vertex_count());
        for name in q.vertices() {
            let d = match dims_v.and_then(|m| m.get(name)) {
                None => 0,
                Some(d) => d
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("dimension at `{name}` is not a natural number")))?
                    as usize,
            };
            dims.push(d);
        }
        if let Some(m) = dims_v {
            if let Some(k) = m.keys().find(|k| q.vertex_index(k).is_err()) {
                return Err(Error::UnknownVertex(k.clone()));
            }
        }
        let maps_v = v.get("maps").and_then(Value::as_object);
        if let Some(m) = maps_v {
            if let Some(k) = m.keys().find(|k| q.arrow_index(k).is_none()) {
                return parse_err(format!("unknown arrow `{k}`"));
            }
        }
        let mut maps = Vec::with_capacity(q.arrows().len());
        for a in q.arrows() {
            maps.push(parse_matrix(
                f,
                maps_v.and_then(|m| m.get(&a.id)),
                dims[a.head],
                dims[a.tail],
                &a.id,
            )?);
        }
        Representation::new(q, f, dims, maps)
    }

    pub fn from_json_str(s: &str) -> Result<Representation> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Representation::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip() {
        let q = Arc::new(Quiver::kronecker());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [Field::prime(5).unwrap(), Field::Rational] {
            let m = Representation::random(q.clone(), f, vec![2, 3], &mut rng);
            let back = Representation::from_json(&m.to_json()).unwrap();
            assert_eq!(m, back);
            let z = Representation::with_dims_zero_maps(q.clone(), f, vec![0, 2]);
            assert_eq!(z, Representation::from_json(&z.to_json()).unwrap());
        }
    }

    #[test]
    fn rational_entries_are_strings() {
        let s = r#"{"quiver":{"vertices":["1","2"],"arrows":[{"id":"a","tail":"1","head":"2"},{"id":"b","tail":"1","head":"2"}]},
            "field":{"type":"rational"},"dims":{"1":1,"2":1},"maps":{"a":[["1/2"]],"b":[["-3/1"]]}}"#;
        let m = Representation::from_json_str(s).unwrap();
        assert_eq!(m.to_json()["maps"]["a"], json!([["1/2"]]));
        assert_eq!(m.to_json()["maps"]["b"], json!([["-3/1"]]));
    }

    #[test]
    fn bad_shapes_rejected() {
        let s = r#"{"quiver":{"vertices":["1","2"],"arrows":[{"id":"a","tail":"1","head":"2"}]},
            "field":{"type":"prime","p":3},"dims":{"1":1,"2":2},"maps":{"a":[[1]]}}"#;
        assert!(matches!(Representation::from_json_str(s), Err(Error::Parse(_))));
        let s = r#"{"quiver":{"vertices":["1"],"arrows":[]},"field":{"type":"prime","p":4},"dims":{}}"#;
        assert!(Representation::from_json_str(s).is_err());
    }
}
