//! JSON forms of matroids, families, closure maps, fields and construction specs.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::gf::{ExtElem, ExtField};
use crate::matroid::{ClosureMap, Provenance, QMatroid, RankTable};
use crate::representable::{matroid_from_matrix, theorem_matrix_in, GeneratorMatrix};
use crate::subspace::Subspace;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    get(v, key)?.as_u64().ok_or_else(|| parse_err(format!("\"{key}\" is not a non-negative integer")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| parse_err(format!("\"{key}\" is not a string")))
}

fn q_n(v: &Value) -> Result<(u32, usize)> {
    Ok((get_u64(v, "q")? as u32, get_u64(v, "n")? as usize))
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    json!(s.to_strings())
}

pub fn subspace_from_json(v: &Value, q: u32, n: usize) -> Result<Subspace> {
    let rows = v.as_array().ok_or_else(|| parse_err("a subspace is a list of row strings"))?;
    let rows: Vec<&str> = rows
        .iter()
        .map(|r| r.as_str().ok_or_else(|| parse_err("row is not a string")))
        .collect::<Result<_>>()?;
    Subspace::from_strings(&rows, q, n)
}

pub fn matroid_to_json(m: &QMatroid) -> Value {
    let entries: Vec<Value> =
        m.entries().map(|(s, r)| json!({"space": subspace_to_json(s), "rank": r})).collect();
    json!({
        "q": m.q(),
        "n": m.n(),
        "kind": "rank_table",
        "provenance": serde_json::to_value(m.provenance()).unwrap(),
        "entries": entries,
    })
}

/// Reads and validates a rank table; the rank axioms are enforced.
pub fn matroid_from_json(v: &Value) -> Result<QMatroid> {
    let (q, n) = q_n(v)?;
    let entries = get(v, "entries")?.as_array().ok_or_else(|| parse_err("\"entries\" is not a list"))?;
    let pairs = entries
        .iter()
        .map(|e| {
            let s = subspace_from_json(get(e, "space")?, q, n)?;
            let r = get(e, "rank")?.as_i64().ok_or_else(|| parse_err("rank is not an integer"))?;
            Ok((s, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let provenance = match v.get("provenance") {
        Some(p) => serde_json::from_value(p.clone()).map_err(|e| parse_err(format!("provenance: {e}")))?,
        None => Provenance::RankTable,
    };
    QMatroid::from_table(RankTable::from_entries(q, n, pairs)?, provenance)
}

pub fn family_to_json(kind: &str, f: &SubspaceFamily) -> Value {
    let members: Vec<Value> = f.iter().map(subspace_to_json).collect();
    json!({"kind": kind, "q": f.q(), "n": f.n(), "members": members})
}

pub fn family_from_json(v: &Value) -> Result<(String, SubspaceFamily)> {
    let (q, n) = q_n(v)?;
    let kind = get_str(v, "kind")?.to_string();
    let members = get(v, "members")?.as_array().ok_or_else(|| parse_err("\"members\" is not a list"))?;
    let members = members.iter().map(|m| subspace_from_json(m, q, n)).collect::<Result<Vec<_>>>()?;
    Ok((kind, SubspaceFamily::from_members(q, n, members)?))
}

pub fn closure_to_json(cl: &ClosureMap) -> Value {
    let lat = cl.lattice();
    let entries: Vec<Value> = (0..lat.len())
        .map(|i| {
            json!({
                "space": subspace_to_json(lat.space(i)),
                "closure": subspace_to_json(lat.space(cl.image_at(i))),
            })
        })
        .collect();
    json!({"q": lat.q(), "n": lat.n(), "kind": "closure_map", "entries": entries})
}

pub fn closure_from_json(v: &Value) -> Result<ClosureMap> {
    let (q, n) = q_n(v)?;
    let entries = get(v, "entries")?.as_array().ok_or_else(|| parse_err("\"entries\" is not a list"))?;
    let pairs = entries
        .iter()
        .map(|e| Ok((subspace_from_json(get(e, "space")?, q, n)?, subspace_from_json(get(e, "closure")?, q, n)?)))
        .collect::<Result<Vec<_>>>()?;
    ClosureMap::from_entries(q, n, pairs)
}

pub fn field_to_json(f: &ExtField) -> Value {
    json!({"q": f.q(), "m": f.m(), "modulus": f.modulus()})
}

/// {"q","m"} with an optional "modulus" (coefficients, constant term first).
pub fn field_from_json(v: &Value) -> Result<ExtField> {
    let q = get_u64(v, "q")? as u32;
    match v.get("modulus") {
        Some(m) => {
            let coeffs = m
                .as_array()
                .ok_or_else(|| parse_err("\"modulus\" is not a list"))?
                .iter()
                .map(|c| c.as_u64().map(|c| c as u32).ok_or_else(|| parse_err("modulus coefficient")))
                .collect::<Result<Vec<_>>>()?;
            let field = ExtField::with_modulus(q, coeffs)?;
            if let Some(m) = v.get("m").and_then(Value::as_u64) {
                if m as usize != field.m() {
                    return Err(parse_err("\"m\" disagrees with the modulus degree"));
                }
            }
            Ok(field)
        }
        None => ExtField::build(q, get_u64(v, "m")? as usize),
    }
}

/// "0", "1", "a", "aK", "a^K", or m base-q digits with the constant term first.
pub fn parse_element(field: &ExtField, s: &str) -> Result<ExtElem> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('a') {
        let rest = rest.strip_prefix('^').unwrap_or(rest);
        let k = if rest.is_empty() {
            1
        } else {
            rest.parse::<u64>().map_err(|_| parse_err(format!("bad exponent in \"{s}\"")))?
        };
        return Ok(field.alpha_pow(k));
    }
    let digits: Option<Vec<u32>> = s.chars().map(|c| c.to_digit(10)).collect();
    match digits {
        Some(d) if d.len() == field.m() && d.iter().all(|&c| c < field.q()) => field.from_coeffs(d),
        Some(d) if d.len() == 1 && d[0] < field.q() => Ok(field.constant(d[0])),
        _ => Err(parse_err(format!("cannot read \"{s}\" as an element of GF({}^{})", field.q(), field.m()))),
    }
}

/// Element strings as written by [`parse_element`]: "0" or "aK".
pub fn format_element(field: &ExtField, x: &ExtElem) -> String {
    match field.log_alpha(x) {
        None => "0".into(),
        Some(0) => "1".into(),
        Some(1) => "a".into(),
        Some(k) => format!("a{k}"),
    }
}

pub fn matrix_to_json(g: &GeneratorMatrix) -> Value {
    let rows: Vec<Value> =
        g.entries().iter().map(|r| json!(r.iter().map(|x| format_element(g.field(), x)).collect::<Vec<_>>())).collect();
    json!({"construction": "matrix", "field": field_to_json(g.field()), "rows": rows})
}

pub fn matrix_from_json(v: &Value) -> Result<GeneratorMatrix> {
    let field = field_from_json(get(v, "field")?)?;
    let rows = get(v, "rows")?.as_array().ok_or_else(|| parse_err("\"rows\" is not a list"))?;
    let entries = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix row is not a list"))?
                .iter()
                .map(|x| parse_element(&field, x.as_str().ok_or_else(|| parse_err("entry is not a string"))?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorMatrix::new(field, entries)
}

/// Builds the matroid described by a construction spec.
pub fn construction_from_json(v: &Value) -> Result<QMatroid> {
    match get_str(v, "construction")? {
        "representable" => {
            let q = get_u64(v, "q")? as u32;
            let (p, s) = (get_u64(v, "p")? as usize, get_u64(v, "s")? as usize);
            let field = match v.get("modulus") {
                Some(_) => field_from_json(v)?,
                None => {
                    if p == 0 || s == 0 {
                        return Err(Error::NotCoprime { p, s });
                    }
                    ExtField::build(q, p * s)?
                }
            };
            matroid_from_matrix(&theorem_matrix_in(&field, p, s)?)
        }
        "matrix" => matroid_from_matrix(&matrix_from_json(v)?),
        "uniform" => {
            let (q, n) = q_n(v)?;
            QMatroid::uniform(get_u64(v, "k")? as usize, n, q)
        }
        "rank_table" => matroid_from_json(v),
        other => Err(parse_err(format!("unknown construction \"{other}\""))),
    }
}

/// Any document the tools read.
#[derive(Clone, Debug)]
pub enum Document {
    Matroid(QMatroid),
    Family { kind: String, family: SubspaceFamily },
    Closure(ClosureMap),
}

pub fn read_document(v: &Value) -> Result<Document> {
    if v.get("construction").is_some() {
        return construction_from_json(v).map(Document::Matroid);
    }
    match get_str(v, "kind")? {
        "rank_table" => matroid_from_json(v).map(Document::Matroid),
        "closure_map" => closure_from_json(v).map(Document::Closure),
        _ => family_from_json(v).map(|(kind, family)| Document::Family { kind, family }),
    }
}

/// Compact serialization; keys keep insertion order so output is stable.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).unwrap()
}

pub fn to_pretty_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

pub fn parse_str(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))
}
