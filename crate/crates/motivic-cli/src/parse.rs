//! Input parsing: comma-separated rationals, JSON form payloads,
//! quaternion symbols, invariant tables, and ring tags.

use motivic::arith::{parse_rational, RingTag};
use motivic::brauer::{BrauerClass, Place};
use motivic::qform::{diagonalize, QuadraticForm};
use num_bigint::BigUint;
use num_rational::BigRational;
use std::str::FromStr;

pub fn rational_list(s: &str) -> Result<Vec<BigRational>, String> {
    s.split(',')
        .map(|part| parse_rational(part).map_err(|e| e.to_string()))
        .collect()
}

pub fn form_from_list(s: &str) -> Result<QuadraticForm, String> {
    let entries = rational_list(s)?;
    QuadraticForm::diagonal(entries).map_err(|e| e.to_string())
}

/// Accepts `{"diag": ["1","-1","2/3"]}` or `{"gram": [["0","1"],["1","0"]]}`.
pub fn form_from_json(s: &str) -> Result<QuadraticForm, String> {
    let value: serde_json::Value =
        serde_json::from_str(s).map_err(|e| format!("malformed JSON: {e}"))?;
    let object = value.as_object().ok_or("expected a JSON object")?;
    if let Some(diag) = object.get("diag") {
        let entries = diag
            .as_array()
            .ok_or("\"diag\" must be an array of rational strings")?
            .iter()
            .map(rational_from_value)
            .collect::<Result<Vec<BigRational>, String>>()?;
        return QuadraticForm::diagonal(entries).map_err(|e| e.to_string());
    }
    if let Some(gram) = object.get("gram") {
        let rows = gram
            .as_array()
            .ok_or("\"gram\" must be an array of rows")?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| "gram rows must be arrays".to_string())?
                    .iter()
                    .map(rational_from_value)
                    .collect::<Result<Vec<BigRational>, String>>()
            })
            .collect::<Result<Vec<Vec<BigRational>>, String>>()?;
        return diagonalize(&rows).map_err(|e| e.to_string());
    }
    Err("expected a \"diag\" or \"gram\" key".to_string())
}

fn rational_from_value(v: &serde_json::Value) -> Result<BigRational, String> {
    match v {
        serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        serde_json::Value::Number(n) => {
            let as_str = n.to_string();
            if as_str.contains('.') {
                Err(format!(
                    "rational {as_str} must be written as a string \"p/q\", not a float"
                ))
            } else {
                parse_rational(&as_str).map_err(|e| e.to_string())
            }
        }
        other => Err(format!("cannot read a rational from {other}")),
    }
}

/// Parses a quaternion symbol `"(a,b)"`.
pub fn quaternion_symbol(s: &str) -> Result<(BigRational, BigRational), String> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| format!("expected \"(a,b)\", got {s:?}"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected two slots in {s:?}"));
    }
    let a = parse_rational(parts[0]).map_err(|e| e.to_string())?;
    let b = parse_rational(parts[1]).map_err(|e| e.to_string())?;
    if a == BigRational::from_integer(0.into()) || b == BigRational::from_integer(0.into()) {
        return Err("quaternion slots must be nonzero".to_string());
    }
    Ok((a, b))
}

/// Parses an invariant table `{"inf": "1/2", "2": "1/2", ...}`.
pub fn brauer_from_json(s: &str) -> Result<BrauerClass, String> {
    let value: serde_json::Value =
        serde_json::from_str(s).map_err(|e| format!("malformed JSON: {e}"))?;
    let object = value
        .as_object()
        .ok_or("expected an object mapping places to invariants")?;
    // Accept an optional {"inv": {...}} wrapper.
    let object = match object.get("inv") {
        Some(serde_json::Value::Object(inner)) => inner,
        Some(other) => return Err(format!("\"inv\" must be an object, got {other}")),
        None => object,
    };
    let mut table = Vec::new();
    for (key, v) in object {
        let place = if key == "inf" || key == "real" {
            Place::Real
        } else {
            let p: u64 = key
                .parse()
                .map_err(|_| format!("place {key:?} is neither \"inf\" nor a prime"))?;
            Place::finite(p).map_err(|e| e.to_string())?
        };
        let inv = rational_from_value(v)?;
        table.push((place, inv));
    }
    BrauerClass::from_invariants(table).map_err(|e| e.to_string())
}

/// Parses the inverted integer of a ring tag.
pub fn ring_tag(s: &str) -> Result<RingTag, String> {
    let n = BigUint::from_str(s.trim()).map_err(|_| format!("{s:?} is not a non-negative integer"))?;
    RingTag::inverting(n).map_err(|e| e.to_string())
}
