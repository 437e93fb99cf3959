//! JSON encodings of matrices, symmetric points, Jordan specs and disc maps.
//!
//! Complex numbers are `[re, im]` pairs. A matrix is `{"n": k, "entries": [[[re, im], …], …]}`
//! in row-major order.

use num_complex::Complex64 as C64;
use serde_json::{json, Value};
use spectral_ball::calculus::PowerSeries;
use spectral_ball::{CMatrix, DiscMap, JordanBlockGroup, JordanSpec, SymPoint};

use crate::error::{Result, VerifyError};

fn bad(msg: impl Into<String>) -> VerifyError {
    VerifyError::input(msg)
}

pub fn complex_to_json(c: C64) -> Value {
    json!([c.re, c.im])
}

pub fn complex_from_json(v: &Value) -> Result<C64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| bad(format!("expected a complex number [re, im], got {v}")))?;
    let part = |x: &Value| {
        x.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| bad(format!("complex parts must be finite numbers, got {x}")))
    };
    Ok(C64::new(part(&pair[0])?, part(&pair[1])?))
}

pub fn complex_list_from_json(v: &Value) -> Result<Vec<C64>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list of complex numbers"))?
        .iter()
        .map(complex_from_json)
        .collect()
}

pub fn complex_list_to_json(cs: &[C64]) -> Value {
    Value::Array(cs.iter().map(|&c| complex_to_json(c)).collect())
}

pub fn matrix_to_json(a: &CMatrix) -> Value {
    let n = a.n();
    let rows: Vec<Value> = (0..n).map(|i| complex_list_to_json(a.row(i))).collect();
    json!({ "n": n, "entries": rows })
}

pub fn matrix_from_json(v: &Value) -> Result<CMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("a matrix must be an object with fields \"n\" and \"entries\""))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("matrix field \"n\" must be a non-negative integer"))?
        as usize;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("matrix field \"entries\" must be a list of rows"))?;
    if rows.len() != n {
        return Err(bad(format!(
            "matrix declares n = {n} but has {} rows",
            rows.len()
        )));
    }
    let rows: Vec<Vec<C64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let row = complex_list_from_json(r)?;
            if row.len() != n {
                return Err(bad(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(CMatrix::from_rows(&rows)?)
}

pub fn sympoint_to_json(z: &SymPoint) -> Value {
    complex_list_to_json(z.coords())
}

/// `[{"eig": [re, im], "sizes": [k, …]}, …]`
pub fn jordan_spec_from_json(v: &Value) -> Result<JordanSpec> {
    let groups = v
        .as_array()
        .ok_or_else(|| bad("a Jordan spec must be a list of {\"eig\", \"sizes\"} groups"))?
        .iter()
        .map(|g| {
            let eig = complex_from_json(
                g.get("eig")
                    .ok_or_else(|| bad("Jordan group is missing \"eig\""))?,
            )?;
            let sizes = g
                .get("sizes")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("Jordan group is missing \"sizes\""))?
                .iter()
                .map(|s| {
                    s.as_u64().map(|k| k as usize).ok_or_else(|| {
                        bad(format!("block size must be a positive integer, got {s}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(JordanBlockGroup::new(eig, sizes))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JordanSpec::new(groups)?)
}

pub fn jordan_spec_to_json(spec: &JordanSpec) -> Value {
    Value::Array(
        spec.groups()
            .iter()
            .map(|g| json!({ "eig": complex_to_json(g.eigenvalue), "sizes": g.sizes }))
            .collect(),
    )
}

fn theta_of(obj: &serde_json::Map<String, Value>) -> Result<f64> {
    match obj.get("theta") {
        None => Ok(0.0),
        Some(t) => t
            .as_f64()
            .ok_or_else(|| bad(format!("\"theta\" must be a number, got {t}"))),
    }
}

/// `{"type":"mobius","c":[re,im],"theta":x}`, `{"type":"blaschke","zeros":[…],"theta":x}` or
/// `{"type":"series","coeffs":[…]}`.
pub fn discmap_from_json(v: &Value) -> Result<DiscMap> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("a disc map must be a JSON object"))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("disc map needs a string field \"type\""))?;
    match kind {
        "mobius" => {
            let c = complex_from_json(obj.get("c").ok_or_else(|| bad("Möbius map needs \"c\""))?)?;
            Ok(DiscMap::mobius(c, theta_of(obj)?)?)
        }
        "blaschke" => {
            let zeros = complex_list_from_json(
                obj.get("zeros")
                    .ok_or_else(|| bad("Blaschke product needs \"zeros\""))?,
            )?;
            Ok(DiscMap::blaschke(zeros, theta_of(obj)?)?)
        }
        "series" => {
            let coeffs = complex_list_from_json(
                obj.get("coeffs")
                    .ok_or_else(|| bad("series map needs \"coeffs\""))?,
            )?;
            let guard = match obj.get("radius_guard") {
                None => spectral_ball::calculus::SERIES_GUARD_RADIUS,
                Some(g) => g
                    .as_f64()
                    .ok_or_else(|| bad("\"radius_guard\" must be a number"))?,
            };
            Ok(DiscMap::Series(PowerSeries::with_guard(coeffs, guard)?))
        }
        other => Err(bad(format!(
            "unknown disc map type {other:?}; expected mobius, blaschke or series"
        ))),
    }
}

pub fn discmap_to_json(f: &DiscMap) -> Value {
    match f {
        DiscMap::Mobius(m) => {
            json!({"type": "mobius", "c": complex_to_json(m.c()), "theta": m.theta()})
        }
        DiscMap::Blaschke(b) => json!({
            "type": "blaschke",
            "zeros": complex_list_to_json(b.zeros()),
            "theta": b.theta(),
        }),
        DiscMap::Series(s) => json!({"type": "series", "coeffs": complex_list_to_json(s.coeffs())}),
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let a = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.5), C64::new(-1.0, 0.0)],
            vec![C64::new(0.0, 2.0), C64::new(0.25, -0.75)],
        ])
        .unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn matrix_shape_errors() {
        let v = parse_json(r#"{"n":2,"entries":[[[1,0],[0,0]]]}"#).unwrap();
        assert!(matrix_from_json(&v).is_err());
        let v = parse_json(r#"{"n":2,"entries":[[[1,0],[0,0]],[[1,0]]]}"#).unwrap();
        assert!(matrix_from_json(&v).is_err());
        let v = parse_json(r#"{"n":2,"entries":[[[1,0],[0,0]],[[1,0],"x"]]}"#).unwrap();
        assert!(matrix_from_json(&v).is_err());
    }

    #[test]
    fn discmap_round_trip() {
        for text in [
            r#"{"type":"mobius","c":[0.3,-0.1],"theta":0.5}"#,
            r#"{"type":"blaschke","zeros":[[0,0],[0.5,0.2]],"theta":-1}"#,
            r#"{"type":"series","coeffs":[[0,0],[0.5,0],[0.5,0]]}"#,
        ] {
            let f = discmap_from_json(&parse_json(text).unwrap()).unwrap();
            assert_eq!(discmap_from_json(&discmap_to_json(&f)).unwrap(), f);
        }
        assert!(discmap_from_json(&parse_json(r#"{"type":"cosine"}"#).unwrap()).is_err());
    }

    #[test]
    fn jordan_spec_round_trip() {
        let v = parse_json(r#"[{"eig":[0.5,0],"sizes":[2,1]},{"eig":[-0.2,0.1],"sizes":[1]}]"#)
            .unwrap();
        let spec = jordan_spec_from_json(&v).unwrap();
        assert_eq!(spec.n(), 4);
        assert_eq!(
            jordan_spec_from_json(&jordan_spec_to_json(&spec)).unwrap(),
            spec
        );
    }
}
