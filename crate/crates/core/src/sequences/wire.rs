//! JSON forms of sequences, moduli and certificates, with element leaves as text.
//!
//! Sequences and moduli are externally tagged objects with snake_case tags:
//! `{"geometric": "1/2"}`, `{"partial_sums": {"expr": "1/n^2"}}`,
//! `{"shrink": {"bound": "3", "side": "right", "inner": {"bernoulli": "1/2"}}}`.
//! A certificate is `{"structure", "sequence", "limit"?, "modulus"}`; without a
//! limit it claims the sequence is Cauchy, and `"vector": [..]` in place of
//! `"sequence"` gives a Cauchy claim in the `k`-fold power.

use serde_json::{json, Map, Value};

use super::{CauchyCertificate, ConvergenceCertificate, GroupSequence, Index, Modulus, Side, SymbolicSequence};
use crate::error::{Error, Result};
use crate::order::OrderedHemiring;
use crate::parse::TermExpression;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn index_json(n: Index) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn index_from(v: &Value) -> Result<Index> {
    match v {
        Value::Number(n) => n.as_u64().map(Index::from).ok_or_else(|| bad(format!("index {n} is not a natural number"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("index `{s}` is not a natural number"))),
        other => Err(bad(format!("expected an index, found {other}"))),
    }
}

fn elem_from<S: OrderedHemiring>(s: &S, v: &Value) -> Result<S::Elem> {
    match v {
        Value::String(t) => Ok(s.parse(t)?),
        Value::Number(n) => Ok(s.parse(&n.to_string())?),
        other => Err(bad(format!("expected element text, found {other}"))),
    }
}

fn single(v: &Value, what: &str) -> Result<(String, Value)> {
    let obj = v.as_object().ok_or_else(|| bad(format!("{what} must be an object")))?;
    if obj.len() != 1 {
        return Err(bad(format!("{what} must have exactly one tag")));
    }
    let (k, v) = obj.iter().next().expect("one entry");
    Ok((k.clone(), v.clone()))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| bad(format!("missing field `{name}`")))
}

fn pair<'a>(v: &'a Value, what: &str) -> Result<(&'a Value, &'a Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((a, b)),
        _ => Err(bad(format!("{what} takes a two-element array"))),
    }
}

pub fn sequence_to_json<S: OrderedHemiring>(s: &S, seq: &SymbolicSequence<S::Elem>) -> Value {
    let b = |x: &SymbolicSequence<S::Elem>| sequence_to_json(s, x);
    match seq {
        SymbolicSequence::Expr { term, start } if *start == 1 => json!({ "expr": term.text() }),
        SymbolicSequence::Expr { term, start } => json!({ "expr": { "term": term.text(), "start": index_json(*start) } }),
        SymbolicSequence::Geometric(r) => json!({ "geometric": s.render(r) }),
        SymbolicSequence::PartialSums(of) => json!({ "partial_sums": b(of) }),
        SymbolicSequence::Condensed(of) => json!({ "condensed": b(of) }),
        SymbolicSequence::Scaled(c, of) => json!({ "scaled": { "c": s.render(c), "of": b(of) } }),
        SymbolicSequence::Sum(x, y) => json!({ "sum": [b(x), b(y)] }),
        SymbolicSequence::Product(x, y) => json!({ "product": [b(x), b(y)] }),
        SymbolicSequence::Shifted(k, of) => json!({ "shifted": { "k": index_json(*k), "of": b(of) } }),
        SymbolicSequence::Table(vals, of) => json!({
            "table": { "values": vals.iter().map(|v| s.render(v)).collect::<Vec<_>>(), "then": b(of) }
        }),
    }
}

pub fn sequence_from_json<S: OrderedHemiring>(s: &S, v: &Value) -> Result<SymbolicSequence<S::Elem>> {
    let (tag, body) = single(v, "sequence")?;
    let sub = |x: &Value| sequence_from_json(s, x).map(Box::new);
    Ok(match tag.as_str() {
        "expr" => match &body {
            Value::String(t) => SymbolicSequence::Expr {
                term: TermExpression::parse(t)?,
                start: 1,
            },
            Value::Object(_) => {
                let t = field(&body, "term")?.as_str().ok_or_else(|| bad("`term` must be text"))?;
                let start = match body.get("start") {
                    Some(x) => index_from(x)?,
                    None => 1,
                };
                SymbolicSequence::Expr {
                    term: TermExpression::parse(t)?,
                    start,
                }
            }
            other => return Err(bad(format!("expr takes text, found {other}"))),
        },
        "geometric" => SymbolicSequence::Geometric(elem_from(s, &body)?),
        "partial_sums" => SymbolicSequence::PartialSums(sub(&body)?),
        "condensed" => SymbolicSequence::Condensed(sub(&body)?),
        "scaled" => SymbolicSequence::Scaled(elem_from(s, field(&body, "c")?)?, sub(field(&body, "of")?)?),
        "sum" => {
            let (a, b) = pair(&body, "sum")?;
            SymbolicSequence::Sum(sub(a)?, sub(b)?)
        }
        "product" => {
            let (a, b) = pair(&body, "product")?;
            SymbolicSequence::Product(sub(a)?, sub(b)?)
        }
        "shifted" => SymbolicSequence::Shifted(index_from(field(&body, "k")?)?, sub(field(&body, "of")?)?),
        "table" => {
            let vals = field(&body, "values")?
                .as_array()
                .ok_or_else(|| bad("`values` must be an array"))?
                .iter()
                .map(|x| elem_from(s, x))
                .collect::<Result<Vec<_>>>()?;
            SymbolicSequence::Table(vals, sub(field(&body, "then")?)?)
        }
        other => return Err(bad(format!("unknown sequence constructor `{other}`"))),
    })
}

pub fn modulus_to_json<S: OrderedHemiring>(s: &S, m: &Modulus<S::Elem>) -> Value {
    let b = |x: &Modulus<S::Elem>| modulus_to_json(s, x);
    match m {
        Modulus::Constant(n) => json!({ "constant": index_json(*n) }),
        Modulus::PowerGap(r) => json!({ "power_gap": s.render(r) }),
        Modulus::Bernoulli(r) => json!({ "bernoulli": s.render(r) }),
        Modulus::Archimedean(c) => json!({ "archimedean": s.render(c) }),
        Modulus::MaxOf(ms) => json!({ "max_of": ms.iter().map(b).collect::<Vec<_>>() }),
        Modulus::Split(x, y) => json!({ "split": [b(x), b(y)] }),
        Modulus::Shrink { bound, side, inner } => json!({
            "shrink": {
                "bound": s.render(bound),
                "side": if *side == Side::Left { "left" } else { "right" },
                "inner": b(inner),
            }
        }),
        Modulus::ExpShift(x) => json!({ "exp_shift": b(x) }),
        Modulus::Log2Shift(x) => json!({ "log2_shift": b(x) }),
        Modulus::Offset(k, x) => json!({ "offset": { "k": index_json(*k), "of": b(x) } }),
    }
}

pub fn modulus_from_json<S: OrderedHemiring>(s: &S, v: &Value) -> Result<Modulus<S::Elem>> {
    let (tag, body) = single(v, "modulus")?;
    let sub = |x: &Value| modulus_from_json(s, x).map(Box::new);
    Ok(match tag.as_str() {
        "constant" => Modulus::Constant(index_from(&body)?),
        "power_gap" => Modulus::PowerGap(elem_from(s, &body)?),
        "bernoulli" => Modulus::Bernoulli(elem_from(s, &body)?),
        "archimedean" => Modulus::Archimedean(elem_from(s, &body)?),
        "max_of" => Modulus::MaxOf(
            body.as_array()
                .ok_or_else(|| bad("max_of takes an array"))?
                .iter()
                .map(|x| modulus_from_json(s, x))
                .collect::<Result<Vec<_>>>()?,
        ),
        "split" => {
            let (a, b) = pair(&body, "split")?;
            Modulus::Split(sub(a)?, sub(b)?)
        }
        "shrink" => {
            let side = match body.get("side").and_then(Value::as_str).unwrap_or("right") {
                "left" => Side::Left,
                "right" => Side::Right,
                other => return Err(bad(format!("unknown side `{other}`"))),
            };
            Modulus::Shrink {
                bound: elem_from(s, field(&body, "bound")?)?,
                side,
                inner: sub(field(&body, "inner")?)?,
            }
        }
        "exp_shift" => Modulus::ExpShift(sub(&body)?),
        "log2_shift" => Modulus::Log2Shift(sub(&body)?),
        "offset" => Modulus::Offset(index_from(field(&body, "k")?)?, sub(field(&body, "of")?)?),
        other => return Err(bad(format!("unknown modulus rule `{other}`"))),
    })
}

/// A parsed certificate document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateDoc<E> {
    Convergence(ConvergenceCertificate<E>),
    Cauchy(CauchyCertificate<E>),
}

fn metadata(obj: &mut Map<String, Value>, trusted: bool, origin: &str, assumptions: &[String]) {
    if trusted {
        obj.insert("trusted".into(), json!(true));
    }
    if origin != "supplied" {
        obj.insert("origin".into(), json!(origin));
    }
    if !assumptions.is_empty() {
        obj.insert("assumptions".into(), json!(assumptions));
    }
}

pub fn convergence_to_json<S: OrderedHemiring>(s: &S, c: &ConvergenceCertificate<S::Elem>) -> Value {
    let mut obj = Map::new();
    obj.insert("structure".into(), json!(s.id()));
    obj.insert("sequence".into(), sequence_to_json(s, &c.sequence));
    obj.insert("limit".into(), json!(s.render(&c.limit)));
    obj.insert("modulus".into(), modulus_to_json(s, &c.modulus));
    metadata(&mut obj, c.trusted, &c.origin, &c.assumptions);
    Value::Object(obj)
}

pub fn cauchy_to_json<S: OrderedHemiring>(s: &S, c: &CauchyCertificate<S::Elem>) -> Value {
    let mut obj = Map::new();
    obj.insert("structure".into(), json!(s.id()));
    match &c.subject {
        GroupSequence::Scalar(x) => obj.insert("sequence".into(), sequence_to_json(s, x)),
        GroupSequence::Vector(xs) => obj.insert(
            "vector".into(),
            Value::Array(xs.iter().map(|x| sequence_to_json(s, x)).collect()),
        ),
    };
    obj.insert("modulus".into(), modulus_to_json(s, &c.modulus));
    metadata(&mut obj, c.trusted, &c.origin, &c.assumptions);
    Value::Object(obj)
}

/// The structure identifier named by a certificate document.
pub fn certificate_structure(v: &Value) -> Result<String> {
    field(v, "structure")?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| bad("`structure` must be text"))
}

/// Reads a certificate; metadata fields are ignored so the claim is validated afresh.
pub fn certificate_from_json<S: OrderedHemiring>(s: &S, v: &Value) -> Result<CertificateDoc<S::Elem>> {
    if !v.is_object() {
        return Err(bad("certificate must be an object"));
    }
    let modulus = modulus_from_json(s, field(v, "modulus")?)?;
    if let Some(vector) = v.get("vector") {
        let xs = vector
            .as_array()
            .ok_or_else(|| bad("`vector` must be an array"))?
            .iter()
            .map(|x| sequence_from_json(s, x))
            .collect::<Result<Vec<_>>>()?;
        if xs.is_empty() {
            return Err(bad("`vector` must be nonempty"));
        }
        return Ok(CertificateDoc::Cauchy(CauchyCertificate::claimed(GroupSequence::Vector(xs), modulus)));
    }
    let sequence = sequence_from_json(s, field(v, "sequence")?)?;
    Ok(match v.get("limit") {
        Some(l) => CertificateDoc::Convergence(ConvergenceCertificate::claimed(sequence, elem_from(s, l)?, modulus)),
        None => CertificateDoc::Cauchy(CauchyCertificate::claimed(GroupSequence::Scalar(sequence), modulus)),
    })
}
