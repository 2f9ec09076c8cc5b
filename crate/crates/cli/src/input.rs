//! Parsing of forms, points and lines from the command line and from files.

use std::path::Path;

use serde_json::Value;
use xrank_core::arith::rational::parse_rational;
use xrank_core::arith::Rational;
use xrank_core::forms::BinaryForm;
use xrank_core::projection::ProjectionCenter;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Comma-separated rationals such as `"1, -2/3, 0"`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>, InputError> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    if items.iter().any(|i| i.is_empty()) {
        return Err(InputError::Invalid(format!("empty entry in list {s:?}")));
    }
    items
        .into_iter()
        .map(|i| parse_rational(i).map_err(|_| InputError::Invalid(format!("not a rational: {i:?}"))))
        .collect()
}

pub fn form_from_list(s: &str) -> Result<BinaryForm, InputError> {
    BinaryForm::from_rationals(parse_list(s)?).map_err(|e| InputError::Invalid(e.to_string()))
}

fn read(path: &Path) -> Result<Value, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(numbers_to_strings(serde_json::from_str(&text)?))
}

/// Integer JSON numbers become strings so that `1` and `"1"` both parse.
fn numbers_to_strings(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(numbers_to_strings).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, v)| {
                    let v = if k == "degree" { v } else { numbers_to_strings(v) };
                    (k, v)
                })
                .collect(),
        ),
        other => other,
    }
}

/// A form file `{"degree": d, "coeffs": [...]}`.
pub fn read_form(path: &Path) -> Result<BinaryForm, InputError> {
    Ok(serde_json::from_value(read(path)?)?)
}

pub fn read_center(path: &Path) -> Result<ProjectionCenter, InputError> {
    ProjectionCenter::new(read_form(path)?).map_err(|e| InputError::Invalid(e.to_string()))
}

fn rational_entry(v: &Value) -> Result<Rational, InputError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| InputError::Invalid(format!("not a rational: {s:?}"))),
        other => Err(InputError::Invalid(format!("expected a rational, got {other}"))),
    }
}

/// A line file: a JSON array of two points, each an array of rationals.
pub fn read_line(path: &Path) -> Result<[Vec<Rational>; 2], InputError> {
    let v = read(path)?;
    let pts = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| InputError::Invalid("a line is given by exactly two points".into()))?;
    let mut out = Vec::with_capacity(2);
    for p in pts {
        let coords = p
            .as_array()
            .ok_or_else(|| InputError::Invalid("each point must be an array".into()))?;
        out.push(coords.iter().map(rational_entry).collect::<Result<Vec<_>, _>>()?);
    }
    let b = out.pop().unwrap();
    let a = out.pop().unwrap();
    Ok([a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        let v = parse_list("1, -2/4,0").unwrap();
        assert_eq!(v[1], Rational::new((-1).into(), 2.into()));
        assert!(parse_list("1,,2").is_err());
        assert!(parse_list("1,x").is_err());
        assert!(form_from_list("0,0,0").is_err());
        assert_eq!(form_from_list("1,0,0,0,1").unwrap().degree(), 4);
    }

    #[test]
    fn numbers_become_strings() {
        let v: Value = serde_json::json!({"degree": 2, "coeffs": [1, "1/2", 0]});
        let f: BinaryForm = serde_json::from_value(numbers_to_strings(v)).unwrap();
        assert_eq!(f.degree(), 2);
    }
}
