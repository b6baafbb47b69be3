//! Canonical JSON for spaces, maps, sequences and the documents built from
//! them. Keys are sorted, rationals are strings `"p/q"` (or `"p"`), tuples
//! are listed in basis order, and zero values are omitted, so writing a parsed
//! canonical file reproduces it byte for byte.

use std::path::Path;
use std::sync::Arc;

use loday_core::graded::{BasisElement, Coeffs, Degree, GradedSpace, LinComb, SpaceRef};
use loday_core::jacobi::{AlphaAntisymOp, GradedAlgebra};
use loday_core::multilinear::{Cochain, DegreeMinusOneElement, MapSequence};
use loday_core::structures::{LodInftyMorphism, LodInftyStructure};
use loday_core::{Error, QMap, QSequence, Rat, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("missing field \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Input(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Input(format!("{what} must be a string")))
}

fn as_int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::Input(format!("{what} must be an integer")))
}

pub fn rational_to_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rat> {
    if let Some(i) = v.as_i64() {
        return Ok(Rat::from_integer(i.into()));
    }
    let s = as_str(v, "coefficient")?.trim();
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Input(format!("bad rational \"{s}\"")));
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse(s)?)),
        Some((p, q)) => {
            let (p, q) = (parse(p)?, parse(q)?);
            if q.is_zero() {
                return bad(format!("zero denominator in \"{s}\""));
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn degree_to_json(d: &Degree) -> Value {
    json!(d.components())
}

pub fn degree_from_json(v: &Value, n: usize) -> Result<Degree> {
    let comps = as_array(v, "degree")?.iter().map(|c| as_int(c, "degree component")).collect::<Result<Vec<_>>>()?;
    if comps.len() != n {
        return bad(format!("degree {v} has {} components, expected {n}", comps.len()));
    }
    Ok(Degree::new(comps))
}

pub fn space_to_json(space: &GradedSpace) -> Value {
    let basis: Vec<Value> =
        space.basis().iter().map(|b| json!({"name": b.name, "degree": degree_to_json(&b.degree)})).collect();
    json!({"n": space.n(), "basis": basis})
}

pub fn space_from_json(v: &Value) -> Result<SpaceRef> {
    let n = field(v, "n")?.as_u64().ok_or_else(|| Error::Input("\"n\" must be a positive integer".into()))? as usize;
    let basis = as_array(field(v, "basis")?, "basis")?
        .iter()
        .map(|b| {
            Ok(BasisElement {
                name: as_str(field(b, "name")?, "basis name")?.to_string(),
                degree: degree_from_json(field(b, "degree")?, n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(GradedSpace::new(n, basis)?))
}

pub fn value_to_json(space: &GradedSpace, c: &Coeffs<Rat>) -> Value {
    Value::Array(c.iter().map(|(&k, x)| json!({"basis": space.name(k), "coeff": rational_to_json(x)})).collect())
}

pub fn value_from_json(space: &GradedSpace, v: &Value) -> Result<Coeffs<Rat>> {
    let mut out = LinComb::new();
    for t in as_array(v, "value")? {
        let k = space.index_of(as_str(field(t, "basis")?, "basis")?)?;
        out.add_term(k, rational_from_json(field(t, "coeff")?)?);
    }
    Ok(out)
}

pub fn map_to_json(m: &QMap) -> Value {
    let (dom, cod) = (m.domain(), m.codomain());
    let entries: Vec<Value> = m
        .entries()
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| {
            let args: Vec<&str> = t.iter().map(|&i| dom.name(i)).collect();
            json!({"args": args, "value": value_to_json(cod, v)})
        })
        .collect();
    json!({"weight": degree_to_json(m.weight()), "arity_index": m.arity_index(), "entries": entries})
}

pub fn map_from_json(v: &Value, dom: &SpaceRef, cod: &SpaceRef) -> Result<QMap> {
    let weight = degree_from_json(field(v, "weight")?, dom.n())?;
    let a = as_int(field(v, "arity_index")?, "arity_index")?;
    if a < 0 {
        return bad("a multilinear map has arity index at least 0");
    }
    let arity = a as usize + 1;
    let mut m = QMap::zero(dom.clone(), cod.clone(), arity, weight);
    for e in as_array(field(v, "entries")?, "entries")? {
        let args = as_array(field(e, "args")?, "args")?;
        if args.len() != arity {
            return bad(format!("entry {e} has {} arguments, expected {arity}", args.len()));
        }
        let t = args.iter().map(|x| dom.index_of(as_str(x, "argument")?)).collect::<Result<Vec<_>>>()?;
        let val = value_from_json(cod, field(e, "value")?)?;
        m.add_to_entry(t, &val)?;
    }
    Ok(m)
}

pub fn element_to_json(e: &DegreeMinusOneElement<Rat>) -> Value {
    json!({"degree": degree_to_json(&e.degree), "value": value_to_json(&e.space, &e.value)})
}

pub fn element_from_json(v: &Value, space: &SpaceRef) -> Result<DegreeMinusOneElement<Rat>> {
    let degree = degree_from_json(field(v, "degree")?, space.n())?;
    DegreeMinusOneElement::new(space.clone(), degree, value_from_json(space, field(v, "value")?)?)
}

pub fn sequence_to_json(s: &QSequence) -> Value {
    let maps: Map<String, Value> = s.maps().map(|(p, m)| (p.to_string(), map_to_json(m))).collect();
    json!({"base_weight": degree_to_json(s.base_weight()), "maps": maps})
}

pub fn sequence_from_json(v: &Value, dom: &SpaceRef, cod: &SpaceRef) -> Result<QSequence> {
    let base = degree_from_json(field(v, "base_weight")?, dom.n())?;
    let mut s = MapSequence::between(dom.clone(), cod.clone(), base);
    let maps = field(v, "maps")?.as_object().ok_or_else(|| Error::Input("\"maps\" must be an object".into()))?;
    for (k, mv) in maps {
        let p: usize = k.parse().map_err(|_| Error::Input(format!("map key \"{k}\" is not an arity")))?;
        let m = map_from_json(mv, dom, cod)?;
        if m.arity() != p {
            return bad(format!("map under key \"{k}\" has arity {}", m.arity()));
        }
        s.insert(m)?;
    }
    Ok(s)
}

/// What a single-space file carries besides its space.
#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Space,
    Cochain(Cochain<Rat>),
    Sequence(QSequence),
}

/// `{"space": .., "map" | "element" | "sequence": ..}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub space: SpaceRef,
    pub payload: Payload,
}

impl Document {
    pub fn space(space: SpaceRef) -> Self {
        Document { space, payload: Payload::Space }
    }

    pub fn cochain(c: Cochain<Rat>) -> Self {
        Document { space: c.space().clone(), payload: Payload::Cochain(c) }
    }

    pub fn map(m: QMap) -> Self {
        Self::cochain(Cochain::Map(m))
    }

    pub fn sequence(s: QSequence) -> Self {
        Document { space: s.space().clone(), payload: Payload::Sequence(s) }
    }

    pub fn structure(s: &LodInftyStructure<Rat>) -> Self {
        Self::sequence(s.maps().clone())
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("space".into(), space_to_json(&self.space));
        match &self.payload {
            Payload::Space => {}
            Payload::Cochain(Cochain::Map(m)) => {
                out.insert("map".into(), map_to_json(m));
            }
            Payload::Cochain(Cochain::Element(e)) => {
                out.insert("element".into(), element_to_json(e));
            }
            Payload::Cochain(Cochain::Null { weight, arity_index, .. }) => {
                out.insert("null".into(), json!({"weight": degree_to_json(weight), "arity_index": arity_index}));
            }
            Payload::Sequence(s) => {
                out.insert("sequence".into(), sequence_to_json(s));
            }
        }
        Value::Object(out)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space = space_from_json(field(v, "space")?)?;
        let payload = if let Some(m) = v.get("map") {
            Payload::Cochain(Cochain::Map(map_from_json(m, &space, &space)?))
        } else if let Some(e) = v.get("element") {
            Payload::Cochain(Cochain::Element(element_from_json(e, &space)?))
        } else if let Some(s) = v.get("sequence") {
            Payload::Sequence(sequence_from_json(s, &space, &space)?)
        } else {
            Payload::Space
        };
        Ok(Document { space, payload })
    }

    pub fn as_cochain(&self) -> Result<&Cochain<Rat>> {
        match &self.payload {
            Payload::Cochain(c) => Ok(c),
            _ => bad("expected a \"map\" or \"element\""),
        }
    }

    pub fn as_map(&self) -> Result<&QMap> {
        match &self.payload {
            Payload::Cochain(Cochain::Map(m)) => Ok(m),
            _ => bad("expected a \"map\""),
        }
    }

    pub fn as_sequence(&self) -> Result<&QSequence> {
        match &self.payload {
            Payload::Sequence(s) => Ok(s),
            _ => bad("expected a \"sequence\""),
        }
    }

    pub fn as_structure(&self, max_arity: usize) -> Result<LodInftyStructure<Rat>> {
        LodInftyStructure::new(self.as_sequence()?.clone(), max_arity)
    }
}

/// `{"source": <doc>, "target": <doc>, "morphism": <sequence>}`.
pub fn morphism_to_json(f: &LodInftyMorphism<Rat>) -> Value {
    json!({
        "source": Document::structure(&f.source).to_json(),
        "target": Document::structure(&f.target).to_json(),
        "morphism": sequence_to_json(f.maps()),
    })
}

pub fn morphism_from_json(v: &Value, max_arity: usize) -> Result<LodInftyMorphism<Rat>> {
    let source = Document::from_json(field(v, "source")?)?.as_structure(max_arity)?;
    let target = Document::from_json(field(v, "target")?)?.as_structure(max_arity)?;
    let maps = sequence_from_json(field(v, "morphism")?, source.space(), target.space())?;
    LodInftyMorphism::new(source, target, maps)
}

/// `{"space", "product", "unit", "alpha"}`, optionally with an operator under
/// `"map"` or `"element"`.
pub fn algebra_to_json(alg: &GradedAlgebra<Rat>, op: Option<&AlphaAntisymOp<Rat>>) -> Value {
    let mut out = Map::new();
    out.insert("space".into(), space_to_json(alg.space()));
    out.insert("product".into(), map_to_json(alg.product()));
    out.insert("unit".into(), Value::String(alg.space().name(alg.unit()).into()));
    out.insert("alpha".into(), degree_to_json(alg.alpha()));
    match op.map(|o| o.cochain()) {
        Some(Cochain::Map(m)) => {
            out.insert("map".into(), map_to_json(m));
        }
        Some(Cochain::Element(e)) => {
            out.insert("element".into(), element_to_json(e));
        }
        _ => {}
    }
    Value::Object(out)
}

pub fn algebra_from_json(v: &Value) -> Result<(GradedAlgebra<Rat>, Option<AlphaAntisymOp<Rat>>)> {
    let space = space_from_json(field(v, "space")?)?;
    let product = map_from_json(field(v, "product")?, &space, &space)?;
    let unit = space.index_of(as_str(field(v, "unit")?, "unit")?)?;
    let alpha = degree_from_json(field(v, "alpha")?, space.n())?;
    let alg = GradedAlgebra::new(product, unit, alpha.clone())?;
    let op = if let Some(m) = v.get("map") {
        Some(AlphaAntisymOp::map(alpha, map_from_json(m, &space, &space)?)?)
    } else if let Some(e) = v.get("element") {
        Some(AlphaAntisymOp::new(alpha, Cochain::Element(element_from_json(e, &space)?))?)
    } else {
        None
    };
    Ok((alg, op))
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_canonical_string(v))
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

/// `"-3/2"` style text for reports.
pub fn format_rational(r: &Rat) -> String {
    if r.is_negative() {
        format!("-{}", -r)
    } else {
        r.to_string()
    }
}
