use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{is_json, json_error};
use crate::chaingang::{CGBasis, CGSum, CGTensor, Character, PowerSeries};
use crate::error::{Error, Result};

/// `3`, `-1/2` or a finite decimal such as `0.25`.
pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((int_part, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac);
        let numer = BigInt::from_str(&digits).ok()?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(numer, denom);
        return Some(if negative { -v } else { v });
    }
    BigRational::from_str(s.trim_start_matches('+')).ok()
}

fn rational_value(v: &Value) -> Option<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => None,
    }
}

fn show_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_monomial(m: &str, line: usize) -> Result<CGBasis> {
    let bad = || Error::parse(line, format!("cannot read monomial `{m}`"));
    if m == "1" {
        return Ok(CGBasis::unit());
    }
    let mut rest = m;
    let mut lambda = Vec::new();
    if let Some(after) = rest.strip_prefix("C[") {
        let (inside, tail) = after.split_once(']').ok_or_else(bad)?;
        for part in inside.split(',').filter(|s| !s.is_empty()) {
            lambda.push(part.parse::<usize>().map_err(|_| bad())?);
        }
        rest = tail;
    }
    let p = if rest.is_empty() {
        0
    } else if rest == "F" {
        1
    } else if let Some(k) = rest.strip_prefix("F^") {
        k.parse::<usize>().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    if lambda.is_empty() && p == 0 && m != "C[]" {
        return Err(bad());
    }
    Ok(CGBasis::new(lambda, p))
}

/// Text like `3*C[2,1]F^2 - C[1] + 1/2*F`, or the JSON term list written
/// by [`cg_sum_to_json`].
pub fn parse_cg_sum(text: &str) -> Result<CGSum> {
    if is_json(text) {
        let raw: Vec<Value> = serde_json::from_str(text).map_err(json_error)?;
        let mut out = CGSum::zero();
        for (i, term) in raw.iter().enumerate() {
            let bad = || Error::parse(i + 1, "term needs `coeff`, `lambda` and `p`");
            let coeff = term.get("coeff").and_then(rational_value).ok_or_else(bad)?;
            let lambda: Vec<usize> = serde_json::from_value(term.get("lambda").cloned().ok_or_else(bad)?)
                .map_err(|_| bad())?;
            let p = term.get("p").and_then(Value::as_u64).ok_or_else(bad)? as usize;
            out.add_term(CGBasis::new(lambda, p), coeff);
        }
        return Ok(out);
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() || compact == "0" {
        return Ok(CGSum::zero());
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    let chars: Vec<char> = compact.chars().collect();
    for i in 1..chars.len() {
        if (chars[i] == '+' || chars[i] == '-') && !matches!(chars[i - 1], '*' | '^' | '[' | ',') {
            pieces.push(chars[start..i].iter().collect::<String>());
            start = i;
        }
    }
    pieces.push(chars[start..].iter().collect::<String>());

    let mut out = CGSum::zero();
    for piece in pieces {
        let (negative, body) = match piece.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        let (coeff, mono) = match body.split_once('*') {
            Some((c, m)) => (
                parse_rational(c).ok_or_else(|| Error::parse(1, format!("bad coefficient `{c}`")))?,
                parse_monomial(m, 1)?,
            ),
            None => match parse_rational(body) {
                Some(c) => (c, CGBasis::unit()),
                None => (BigRational::one(), parse_monomial(body, 1)?),
            },
        };
        out.add_term(mono, if negative { -coeff } else { coeff });
    }
    Ok(out)
}

fn basis_json(b: &CGBasis) -> Value {
    json!({ "lambda": b.lambda(), "p": b.phantoms() })
}

pub fn cg_sum_to_json(x: &CGSum) -> Value {
    Value::Array(
        x.iter()
            .map(|(b, c)| json!({ "coeff": show_rational(c), "lambda": b.lambda(), "p": b.phantoms() }))
            .collect(),
    )
}

pub fn cg_tensor_to_json(t: &CGTensor) -> Value {
    Value::Array(
        t.iter()
            .map(|(l, r, c)| json!({ "coeff": show_rational(c), "left": basis_json(l), "right": basis_json(r) }))
            .collect(),
    )
}

/// `{"a": "...", "t": [...], "N": 10}`. Missing `N` means `default_n`;
/// values of `t` beyond those given are zero.
pub fn parse_character(text: &str, default_n: usize) -> Result<Character> {
    let raw: Value = serde_json::from_str(text).map_err(json_error)?;
    let obj = raw
        .as_object()
        .ok_or_else(|| Error::parse(1, "character must be a JSON object"))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "a" | "t" | "N")) {
        return Err(Error::parse(1, format!("unknown field `{k}`")));
    }
    let a = match obj.get("a") {
        Some(v) => rational_value(v).ok_or_else(|| Error::parse(1, "`a` must be a rational"))?,
        None => BigRational::zero(),
    };
    let t: Vec<BigRational> = match obj.get("t") {
        Some(Value::Array(vs)) => vs
            .iter()
            .map(|v| rational_value(v).ok_or_else(|| Error::parse(1, "`t` entries must be rationals")))
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::parse(1, "`t` must be a list")),
        None => Vec::new(),
    };
    let n = match obj.get("N") {
        Some(v) => v.as_u64().ok_or_else(|| Error::parse(1, "`N` must be a count"))? as usize,
        None => default_n,
    };
    if t.len() > n {
        return Err(Error::parse(1, format!("{} values of `t` exceed N = {n}", t.len())));
    }
    let mut t = t;
    t.resize(n, BigRational::zero());
    Ok(Character::new(a, t))
}

pub fn character_to_json(z: &Character) -> Value {
    json!({
        "a": show_rational(z.phantom_value()),
        "t": z.chain_values().iter().map(show_rational).collect::<Vec<_>>(),
        "N": z.truncation(),
    })
}

/// A JSON list of coefficients `c_0, ..., c_N`, or the same list separated
/// by commas or whitespace.
pub fn parse_series(text: &str) -> Result<PowerSeries> {
    let coeffs: Vec<BigRational> = if is_json(text) {
        let raw: Vec<Value> = serde_json::from_str(text).map_err(json_error)?;
        raw.iter()
            .map(|v| rational_value(v).ok_or_else(|| Error::parse(1, "coefficients must be rationals")))
            .collect::<Result<_>>()?
    } else {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| parse_rational(s).ok_or_else(|| Error::parse(1, format!("bad coefficient `{s}`"))))
            .collect::<Result<_>>()?
    };
    PowerSeries::new(coeffs)
}

pub fn series_to_json(f: &PowerSeries) -> Value {
    Value::Array(f.coeffs().iter().map(|c| json!(show_rational(c))).collect())
}
