//! Text code files and JSON documents.
//!
//! Code file:
//!
//! ```text
//! q=2^2 poly=1,1,1
//! 8 4
//! 1 0 0 0 1 3 2 0
//! ...
//! ```
//!
//! The `poly=` part may also sit on its own line after the field line. Blank
//! lines and `#` comments are ignored. Matrix entries use the canonical
//! element encoding. Every big integer in JSON is a decimal string.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::census::RankCensus;
use crate::code::{CodeError, CodeParameters, LinearCode, WeightDistribution};
use crate::field::{Field, FieldError};
use crate::matrix::{CodeMatrix, MatrixError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_poly(text: &str, line: usize) -> Result<Vec<u32>, ParseError> {
    text.split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| syntax(line, format!("bad coefficient {c:?}"))))
        .collect()
}

/// Splits a prime power into `(p, m)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Parses a field designator line such as `q=2^2 poly=1,1,1` or `q=7`.
pub fn parse_field_line(text: &str, line: usize) -> Result<(u32, u32, Option<Vec<u32>>), ParseError> {
    let mut q_part = None;
    let mut poly = None;
    for token in text.split_whitespace() {
        if let Some(v) = token.strip_prefix("q=") {
            q_part = Some(v);
        } else if let Some(v) = token.strip_prefix("poly=") {
            poly = Some(parse_poly(v, line)?);
        } else {
            return Err(syntax(line, format!("unexpected token {token:?} in field line")));
        }
    }
    let q_part = q_part.ok_or_else(|| syntax(line, "expected field designator q=p^m"))?;
    let (p, m) = match q_part.split_once('^') {
        Some((p, m)) => (
            p.parse::<u32>().map_err(|_| syntax(line, format!("bad characteristic {p:?}")))?,
            m.parse::<u32>().map_err(|_| syntax(line, format!("bad degree {m:?}")))?,
        ),
        None => {
            let q = q_part
                .parse::<u32>()
                .map_err(|_| syntax(line, format!("bad field order {q_part:?}")))?;
            prime_power(q).ok_or_else(|| syntax(line, format!("{q} is not a prime power")))?
        }
    };
    Ok((p, m, poly))
}

pub fn field_designator(field: &Field) -> String {
    let mut s = format!("q={}^{}", field.characteristic(), field.degree());
    if !field.modulus().is_empty() {
        let coeffs: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
        s.push_str(&format!(" poly={}", coeffs.join(",")));
    }
    s
}

/// Parses a code file into a [`LinearCode`].
pub fn parse_code(text: &str) -> Result<LinearCode, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, first) = lines.next().ok_or_else(|| syntax(1, "empty code file"))?;
    let (p, m, mut poly) = parse_field_line(first, ln)?;

    let (mut ln, mut dims) = lines.next().ok_or_else(|| syntax(ln + 1, "missing `n k` line"))?;
    if let Some(v) = dims.strip_prefix("poly=") {
        if poly.is_some() {
            return Err(syntax(ln, "modulus given twice"));
        }
        poly = Some(parse_poly(v, ln)?);
        (ln, dims) = lines.next().ok_or_else(|| syntax(ln + 1, "missing `n k` line"))?;
    }
    let field = Field::new(p, m, poly.as_deref())?;

    let nk: Vec<usize> = dims
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| syntax(ln, format!("bad dimension {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [n, k] = nk[..] else {
        return Err(syntax(ln, "expected `n k`"));
    };
    if k > n {
        return Err(syntax(ln, format!("k = {k} exceeds n = {n}")));
    }

    let mut data = Vec::with_capacity(n * k);
    for row in 0..k {
        let (ln, text) = lines
            .next()
            .ok_or_else(|| syntax(ln + row + 1, format!("expected {k} generator rows, found {row}")))?;
        let entries: Vec<u32> = text
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| syntax(ln, format!("bad entry {t:?}"))))
            .collect::<Result<_, _>>()?;
        if entries.len() != n {
            return Err(syntax(ln, format!("row has {} entries, expected {n}", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= field.order()) {
            return Err(syntax(ln, format!("entry {bad} not in [0, {})", field.order())));
        }
        data.extend(entries);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after generator rows"));
    }
    let g = CodeMatrix::new(&field, k, n, data)?;
    Ok(LinearCode::from_generator(g)?)
}

pub fn format_code(code: &LinearCode) -> String {
    format_generator(code.generator())
}

/// Code file text for a generator matrix.
pub fn format_generator(g: &CodeMatrix) -> String {
    let mut s = field_designator(g.field());
    s.push('\n');
    s.push_str(&format!("{} {}\n", g.cols(), g.rows()));
    for r in 0..g.rows() {
        let row: Vec<String> = g.row(r).iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn distribution_to_json(a: &WeightDistribution) -> Value {
    json!({
        "n": a.n(),
        "k": a.k(),
        "q": a.q(),
        "A": a.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn params_to_json(p: &CodeParameters) -> Value {
    json!({
        "n": p.n,
        "k": p.k,
        "q": p.q,
        "d": p.d,
        "d_perp": p.d_perp,
        "sigma": p.sigma(),
    })
}

fn json_big(v: &Value) -> Option<BigInt> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).ok(),
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        _ => None,
    }
}

fn json_usize(obj: &Map<String, Value>, key: &str) -> Result<usize, ParseError> {
    obj.get(key)
        .and_then(|v| v.as_u64().or_else(|| v.as_str().and_then(|s| s.parse().ok())))
        .map(|v| v as usize)
        .ok_or_else(|| ParseError::Json(format!("missing or invalid {key:?}")))
}

pub fn distribution_from_json(v: &Value) -> Result<WeightDistribution, ParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::Json("expected an object".into()))?;
    let n = json_usize(obj, "n")?;
    let k = json_usize(obj, "k")?;
    let q = json_usize(obj, "q")? as u32;
    let counts = obj
        .get("A")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Json("missing \"A\" array".into()))?
        .iter()
        .map(|x| json_big(x).ok_or_else(|| ParseError::Json(format!("bad count {x}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightDistribution::new(n, k, q, counts)?)
}

/// Known weights from either `{"index": "value", ...}` or a distribution
/// document (every entry becomes a known).
pub fn knowns_from_json(v: &Value) -> Result<BTreeMap<usize, BigInt>, ParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::Json("knowns must be a JSON object".into()))?;
    if obj.contains_key("A") {
        let a = distribution_from_json(v)?;
        return Ok(a.counts().iter().cloned().enumerate().collect());
    }
    obj.iter()
        .map(|(key, val)| {
            let idx = key
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::Json(format!("bad index {key:?}")))?;
            let value = json_big(val).ok_or_else(|| ParseError::Json(format!("bad value for {key:?}")))?;
            Ok((idx, value))
        })
        .collect()
}

pub fn knowns_to_json(knowns: &BTreeMap<usize, BigInt>) -> Value {
    Value::Object(
        knowns
            .iter()
            .map(|(i, v)| (i.to_string(), Value::String(v.to_string())))
            .collect(),
    )
}

pub fn census_to_json(c: &RankCensus) -> Value {
    let counts: Map<String, Value> = c
        .counts
        .iter()
        .map(|(r, n)| (r.to_string(), Value::String(n.to_string())))
        .collect();
    json!({
        "nu": c.nu,
        "counts": counts,
        "binom_total": c.expected_total().to_string(),
    })
}
