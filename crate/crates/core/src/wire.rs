//! JSON encodings of families, elements, morphisms and errors.
//!
//! Scalars are strings such as `"-3/2+1/4 i"`. Polynomials are arrays of
//! scalars in ascending degree; Laurent polynomials are
//! `{"offset": -2, "coeffs": [...]}`. Family files look like
//!
//! ```json
//! { "rank": 3, "base": "affine", "basis": ["Y", "H", "X"],
//!   "weights": [-2, 0, 2], "h_index": 1,
//!   "brackets": { "0,1": [["2"], [], []] } }
//! ```
//!
//! with zero brackets omitted and keys `"i,j"`, `i < j`, in numeric order.

use serde_json::{json, Map, Value};

use crate::arith::{GaussianRational, LaurentPoly, Poly};
use crate::classify::ClassificationResult;
use crate::error::{Error, NotExtensionReason, Result};
use crate::liefam::{Base, GradedFamily, MAX_EXPONENT};
use crate::morphisms::{PairMorphism, Sign};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn scalar_to_json(c: &GaussianRational) -> Value {
    Value::String(c.to_string())
}

pub fn scalar_from_json(v: &Value) -> Result<GaussianRational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() => Ok(n.as_i64().unwrap().into()),
        _ => Err(parse_err(format!("expected a scalar string, found {v}"))),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

fn scalars_from_json(v: &Value) -> Result<Vec<GaussianRational>> {
    let Value::Array(items) = v else {
        return Err(parse_err(format!("expected an array of scalars, found {v}")));
    };
    items.iter().map(scalar_from_json).collect()
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    Ok(Poly::new(scalars_from_json(v)?))
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    json!({
        "offset": p.offset(),
        "coeffs": p.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

/// Accepts either a polynomial array or a Laurent object.
pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    match v {
        Value::Array(_) => Ok(poly_from_json(v)?.into()),
        Value::Object(o) => {
            check_keys(o, &["offset", "coeffs"])?;
            let offset = o
                .get("offset")
                .and_then(Value::as_i64)
                .ok_or_else(|| parse_err("Laurent polynomial needs an integer \"offset\""))?;
            let coeffs = o
                .get("coeffs")
                .ok_or_else(|| parse_err("Laurent polynomial needs \"coeffs\""))?;
            if offset.unsigned_abs() > MAX_EXPONENT as u64 {
                return Err(Error::Malformed(format!("offset {offset} outside ±{MAX_EXPONENT}")));
            }
            Ok(LaurentPoly::new(offset, scalars_from_json(coeffs)?))
        }
        _ => Err(parse_err(format!("expected a polynomial, found {v}"))),
    }
}

/// Polynomial array over the affine line, Laurent object over the punctured one.
pub fn coord_to_json(p: &LaurentPoly, base: Base) -> Value {
    match (base, p.to_poly()) {
        (Base::Affine, Some(q)) => poly_to_json(&q),
        _ => laurent_to_json(p),
    }
}

fn coord_from_json(v: &Value, base: Base) -> Result<LaurentPoly> {
    let p = laurent_from_json(v)?;
    if base == Base::Affine && !p.is_polynomial() {
        return Err(Error::Malformed(format!("negative powers of x over the affine line: {p}")));
    }
    Ok(p)
}

pub fn coords_to_json(coords: &[LaurentPoly], base: Base) -> Value {
    Value::Array(coords.iter().map(|c| coord_to_json(c, base)).collect())
}

pub fn coords_from_json(v: &Value, base: Base) -> Result<Vec<LaurentPoly>> {
    let Value::Array(items) = v else {
        return Err(parse_err(format!("expected a coordinate array, found {v}")));
    };
    items.iter().map(|c| coord_from_json(c, base)).collect()
}

fn check_keys(o: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_err(format!("unexpected key \"{k}\""))),
        None => Ok(()),
    }
}

fn field<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| parse_err(format!("missing key \"{key}\"")))
}

fn usize_field(o: &Map<String, Value>, key: &str) -> Result<usize> {
    field(o, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| parse_err(format!("\"{key}\" must be a non-negative integer")))
}

pub fn family_to_json(f: &GradedFamily) -> Value {
    let mut brackets = Map::new();
    for (&(i, j), coords) in f.bracket_table() {
        brackets.insert(format!("{i},{j}"), coords_to_json(coords, f.base()));
    }
    json!({
        "rank": f.rank(),
        "base": f.base().as_str(),
        "basis": f.basis_names(),
        "weights": f.weights(),
        "h_index": f.h_index(),
        "brackets": brackets,
    })
}

fn parse_pair_key(key: &str, rank: usize) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("bracket key \"{key}\" is not \"i,j\" with i != j below the rank"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i == j || i >= rank || j >= rank {
        return Err(bad());
    }
    Ok((i, j))
}

pub fn family_from_json(v: &Value) -> Result<GradedFamily> {
    let Value::Object(o) = v else {
        return Err(parse_err("family file must be a JSON object"));
    };
    check_keys(o, &["rank", "base", "basis", "weights", "h_index", "brackets"])?;
    let rank = usize_field(o, "rank")?;
    let base = match field(o, "base")?.as_str() {
        Some("affine") => Base::Affine,
        Some("punctured") => Base::Punctured,
        _ => return Err(parse_err("\"base\" must be \"affine\" or \"punctured\"")),
    };
    let basis: Vec<String> = serde_json::from_value(field(o, "basis")?.clone())
        .map_err(|e| parse_err(format!("\"basis\": {e}")))?;
    let weights: Vec<i64> = serde_json::from_value(field(o, "weights")?.clone())
        .map_err(|e| parse_err(format!("\"weights\": {e}")))?;
    let h_index = usize_field(o, "h_index")?;
    if basis.len() != rank || weights.len() != rank {
        return Err(Error::Malformed(format!(
            "rank {rank} but {} basis names and {} weights",
            basis.len(),
            weights.len()
        )));
    }
    let Value::Object(table) = field(o, "brackets")? else {
        return Err(parse_err("\"brackets\" must be an object"));
    };
    let mut entries = Vec::with_capacity(table.len());
    for (key, coords) in table {
        let pair = parse_pair_key(key, rank)?;
        entries.push((pair, coords_from_json(coords, base)?));
    }
    GradedFamily::new(base, basis, weights, h_index, entries)
}

/// Canonical text of a family file; `parse_family(emit_family(f)) == f`.
pub fn emit_family(f: &GradedFamily) -> String {
    to_canonical_string(&family_to_json(f))
}

pub fn parse_family(text: &str) -> Result<GradedFamily> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    family_from_json(&v)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn morphism_to_json(p: &PairMorphism) -> Value {
    json!({
        "m": p.m(),
        "n": p.n(),
        "c": p.c().to_string(),
        "k": p.k(),
        "s": p.s().value(),
        "localized": p.localized(),
    })
}

pub fn morphism_from_json(v: &Value) -> Result<PairMorphism> {
    let Value::Object(o) = v else {
        return Err(parse_err("morphism must be a JSON object"));
    };
    check_keys(o, &["m", "n", "c", "k", "s", "localized"])?;
    let index = |key: &str| -> Result<u32> {
        field(o, key)?
            .as_u64()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| parse_err(format!("\"{key}\" must be a natural number")))
    };
    let m = index("m")?;
    let n = index("n")?;
    let c = scalar_from_json(field(o, "c")?)?;
    let k = field(o, "k")?
        .as_i64()
        .ok_or_else(|| parse_err("\"k\" must be an integer"))?;
    let s = field(o, "s")?
        .as_i64()
        .ok_or_else(|| parse_err("\"s\" must be 1 or -1"))?;
    let s = Sign::from_value(s)?;
    let localized = match o.get("localized") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(parse_err("\"localized\" must be a boolean")),
    };
    PairMorphism::new(m, n, c, k, s, localized)
}

/// Parses the compact form `m,n,c,k,s`.
pub fn morphism_from_tuple(text: &str, localized: bool) -> Result<PairMorphism> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [m, n, c, k, s] = parts[..] else {
        return Err(parse_err(format!("expected m,n,c,k,s, found \"{text}\"")));
    };
    let nat = |t: &str| t.parse::<u32>().map_err(|_| parse_err(format!("\"{t}\" is not a natural number")));
    let int = |t: &str| t.parse::<i64>().map_err(|_| parse_err(format!("\"{t}\" is not an integer")));
    PairMorphism::new(nat(m)?, nat(n)?, c.parse()?, int(k)?, Sign::from_value(int(s)?)?, localized)
}

pub fn element_to_json(coords: &[LaurentPoly], base: Base) -> Value {
    json!({ "coords": coords_to_json(coords, base) })
}

pub fn element_from_json(v: &Value, base: Base) -> Result<Vec<LaurentPoly>> {
    let Value::Object(o) = v else {
        return Err(parse_err("element must be a JSON object"));
    };
    check_keys(o, &["coords"])?;
    coords_from_json(field(o, "coords")?, base)
}

pub fn classification_to_json(r: &ClassificationResult) -> Value {
    json!({
        "n": r.n,
        "c": r.scale_c.to_string(),
        "canonical_change": r.canonical_change.iter().map(|row| coords_to_json(row, Base::Affine)).collect::<Vec<_>>(),
        "labels": r.label(),
    })
}

/// Structured error object; the `"error"` key names the failure.
pub fn error_to_json(e: &Error) -> Value {
    match e {
        Error::Validation { axiom, witness } => json!({
            "error": "ValidationError",
            "axiom": axiom.as_str(),
            "triple": witness,
        }),
        Error::NotExtension(reason) => {
            let mut o = json!({ "error": reason.name(), "message": reason.to_string() });
            match reason {
                NotExtensionReason::NonMonomial { coefficient } => o["coefficient"] = json!(coefficient),
                NotExtensionReason::WrongWeights(w) => o["weights"] = json!(w),
                _ => {}
            }
            o
        }
        Error::DegreeBoundTooSmall { bound, reason } => json!({
            "error": "DegreeBoundTooSmall",
            "bound": bound,
            "message": reason,
        }),
        other => json!({ "error": error_name(other), "message": other.to_string() }),
    }
}

pub fn error_name(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::NotAUnit(_) => "NotAUnit",
        Error::Parse(_) => "ParseError",
        Error::Malformed(_) => "MalformedFamily",
        Error::Validation { .. } => "ValidationError",
        Error::FamilyMismatch => "FamilyMismatch",
        Error::PuncturedAtZero => "PuncturedAtZero",
        Error::AlreadyPunctured => "AlreadyPunctured",
        Error::NotExtension(r) => r.name(),
        Error::NotCanonical(_) => "NotCanonical",
        Error::NoWitness(_) => "NoWitness",
        Error::InvalidMorphism(_) => "InvalidMorphism",
        Error::ChainMismatch(_) => "ChainMismatch",
        Error::NegativeExponent(_) => "NegativeExponent",
        Error::DegreeBoundTooSmall { .. } => "DegreeBoundTooSmall",
    }
}

/// Errors caused by unreadable input rather than by the mathematics.
pub fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Parse(_) | Error::Malformed(_))
}
