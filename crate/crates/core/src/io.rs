//! JSON formats for polytopes, polynomials and results.
//!
//! Polytope: `{"dim": n, "facets": [{"normal": [ints], "offset": int}, …]}`.
//! Polynomial: `{"vars": n, "terms": [{"coeff": "p/q", "exponents": [ints]}]}`.
//! Integers may be given as JSON numbers or decimal strings; rationals as
//! strings `"p/q"` or as JSON integers. Output always uses strings.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, BigComplex, Cyclotomic, Int, Rat};
use crate::measure::Polynomial;
use crate::polar::PolarizedCone;
use crate::polytope::SimplePolytope;

fn read(path: &Path) -> Result<Value> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(&p, e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(&p, e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("{at}.{key}"), "missing field"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(at, "expected an array"))
}

fn integer(v: &Value, at: &str) -> Result<Int> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("JSON integer")),
        Value::String(s) => s.trim().parse().map_err(|_| Error::parse(at, format!("not an integer: {s:?}"))),
        _ => Err(Error::parse(at, "expected an integer")),
    }
}

fn rational(v: &Value, at: &str) -> Result<Rat> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(Rat::from_integer(integer(v, at)?)),
        Value::String(s) => parse_rational(s).map_err(|_| Error::parse(at, format!("not a rational: {s:?}"))),
        _ => Err(Error::parse(at, "expected a rational string")),
    }
}

fn count(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| Error::parse(at, "expected a non-negative integer"))
}

pub fn polytope_from_value(v: &Value) -> Result<SimplePolytope> {
    let dim = count(field(v, "dim", "$")?, "$.dim")?;
    let facets = array(field(v, "facets", "$")?, "$.facets")?;
    let mut normals = Vec::with_capacity(facets.len());
    let mut offsets = Vec::with_capacity(facets.len());
    for (i, f) in facets.iter().enumerate() {
        let at = format!("$.facets[{i}]");
        let normal = array(field(f, "normal", &at)?, &format!("{at}.normal"))?;
        if normal.len() != dim {
            return Err(Error::parse(format!("{at}.normal"), format!("length {} ≠ dim {dim}", normal.len())));
        }
        let u = normal
            .iter()
            .enumerate()
            .map(|(k, x)| integer(x, &format!("{at}.normal[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        normals.push(u);
        offsets.push(rational(field(f, "offset", &at)?, &format!("{at}.offset"))?);
    }
    SimplePolytope::build(&normals, &offsets)
}

pub fn parse_polytope_str(text: &str) -> Result<SimplePolytope> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    polytope_from_value(&v)
}

pub fn parse_polytope(path: impl AsRef<Path>) -> Result<SimplePolytope> {
    polytope_from_value(&read(path.as_ref())?)
}

pub fn polynomial_from_value(v: &Value) -> Result<Polynomial> {
    let vars = count(field(v, "vars", "$")?, "$.vars")?;
    let terms = array(field(v, "terms", "$")?, "$.terms")?;
    let mut f = Polynomial::zero(vars);
    for (i, t) in terms.iter().enumerate() {
        let at = format!("$.terms[{i}]");
        let c = rational(field(t, "coeff", &at)?, &format!("{at}.coeff"))?;
        let exps = array(field(t, "exponents", &at)?, &format!("{at}.exponents"))?;
        if exps.len() != vars {
            return Err(Error::parse(format!("{at}.exponents"), format!("length {} ≠ vars {vars}", exps.len())));
        }
        let e = exps
            .iter()
            .enumerate()
            .map(|(k, x)| {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::parse(format!("{at}.exponents[{k}]"), "expected a non-negative integer"))
            })
            .collect::<Result<Vec<u32>>>()?;
        f.add_term(e, c);
    }
    Ok(f)
}

pub fn parse_polynomial_str(text: &str) -> Result<Polynomial> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    polynomial_from_value(&v)
}

pub fn parse_polynomial(path: impl AsRef<Path>) -> Result<Polynomial> {
    polynomial_from_value(&read(path.as_ref())?)
}

pub fn rational_json(r: &Rat) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn integer_json(n: &Int) -> Value {
    Value::String(n.to_string())
}

pub fn complex_json(z: &BigComplex) -> Value {
    json!({"re": z.re_string(), "im": z.im_string(), "prec_bits": z.precision()})
}

/// A rational string when the value is rational, else power-basis coordinates.
pub fn cyclotomic_json(z: &Cyclotomic) -> Value {
    match z.as_rational() {
        Some(r) => rational_json(&r),
        None => json!({"conductor": z.conductor(), "coords": rationals_json(z.coords())}),
    }
}

pub fn polytope_to_json(p: &SimplePolytope) -> Value {
    let facets: Vec<Value> = p
        .normals()
        .iter()
        .zip(p.offsets())
        .map(|(u, l)| json!({"normal": u.iter().map(integer_json).collect::<Vec<_>>(), "offset": integer_json(l)}))
        .collect();
    json!({"dim": p.dim(), "facets": facets})
}

pub fn polynomial_to_json(f: &Polynomial) -> Value {
    let terms: Vec<Value> =
        f.terms().map(|(e, c)| json!({"coeff": rational_json(c), "exponents": e})).collect();
    json!({"vars": f.nvars(), "terms": terms})
}

pub fn vertices_json(p: &SimplePolytope) -> Value {
    Value::Array(
        p.vertices()
            .iter()
            .map(|v| json!({"point": rationals_json(&v.point), "I_v": v.facets, "group_order": v.group_order}))
            .collect(),
    )
}

pub fn faces_json(p: &SimplePolytope) -> Value {
    Value::Array(
        p.faces()
            .iter()
            .map(|f| {
                json!({
                    "I_F": f.facets,
                    "codim": f.codim(),
                    "group": {"divisors": f.group.divisors},
                    "flat_count": f.flat_elements().count(),
                })
            })
            .collect(),
    )
}

pub fn decomposition_json(p: &SimplePolytope, cones: &[PolarizedCone]) -> Value {
    Value::Array(
        cones
            .iter()
            .map(|c| {
                json!({
                    "vertex": rationals_json(&p.vertex(c.vertex).point),
                    "sign": c.sign,
                    "flipped": c.flipped,
                    "open": c.flipped,
                })
            })
            .collect(),
    )
}

/// `{"error": kind, "message": …, "exit_code": n}`.
pub fn error_json(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    let mut m = Map::new();
    m.insert("error".into(), Value::String(kind));
    m.insert("message".into(), Value::String(e.to_string()));
    m.insert("exit_code".into(), json!(e.exit_code()));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    const SQUARE: &str = r#"{"dim": 2, "facets": [
        {"normal": [1, 0], "offset": 0}, {"normal": [0, 1], "offset": 0},
        {"normal": [-1, 0], "offset": 1}, {"normal": [0, -1], "offset": "1"}]}"#;

    #[test]
    fn polytope_round_trip() {
        let p = parse_polytope_str(SQUARE).unwrap();
        assert_eq!(p.num_facets(), 4);
        let q = polytope_from_value(&polytope_to_json(&p)).unwrap();
        assert_eq!(q.normals(), p.normals());
        assert_eq!(q.offsets(), p.offsets());
    }

    #[test]
    fn polynomial_parsing() {
        let f = parse_polynomial_str(r#"{"vars": 2, "terms": [{"coeff": "1/3", "exponents": [1, 0]}]}"#).unwrap();
        assert_eq!(f.coeff(&[1, 0]), rat(1, 3));
        assert_eq!(polynomial_from_value(&polynomial_to_json(&f)).unwrap(), f);
        let err = parse_polynomial_str(r#"{"vars": 2, "terms": [{"coeff": "1", "exponents": [1]}]}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "$.terms[0].exponents"));
    }

    #[test]
    fn outputs() {
        assert_eq!(rational_json(&rat(14, 1)), json!("14"));
        assert_eq!(rational_json(&rat(3, 4)), json!("3/4"));
        assert_eq!(error_json(&Error::RequiresNonSingularFan)["exit_code"], json!(3));
    }
}
