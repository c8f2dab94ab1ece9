//! Instance documents: two labeled posets with a map, or a ring homomorphism.
//!
//! ```json
//! {
//!   "name": "stacked",
//!   "s_poset": { "labels": ["p"], "order": [] },
//!   "r_poset": { "labels": ["q1", "q2"], "order": [["q1", "q2"]] },
//!   "map": { "q1": "p", "q2": "TOP" }
//! }
//! ```
//!
//! A ring document replaces the last three fields with
//! `"ring": "hom(m=6, target=Zn(2), e=1)"` or
//! `"ring": { "m": 6, "target": "Zn(2)", "e": [1] }`. A bare `hom(...)` line
//! is also accepted. Serialization writes `order` as covering pairs and the
//! map in `r` index order, which is the canonical form.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use spectra::{
    covering_pairs, make_hom, parse_hom, parse_ring, Element, MapError, Poset, PosetError,
    RingError, RingHom, SpectralMap, Target,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
}

impl From<PosetError> for DocumentError {
    fn from(e: PosetError) -> Self {
        DocumentError::Semantic(e.to_string())
    }
}

impl From<MapError> for DocumentError {
    fn from(e: MapError) -> Self {
        DocumentError::Semantic(e.to_string())
    }
}

impl From<RingError> for DocumentError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Parse(p) => DocumentError::Syntax {
                line: p.line,
                column: p.column,
                message: p.message,
            },
            other => DocumentError::Semantic(other.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    labels: Vec<String>,
    #[serde(default)]
    order: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawUnit {
    One(u64),
    Many(Vec<u64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRing {
    Text(String),
    Fields { m: u64, target: String, e: RawUnit },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    name: Option<String>,
    seed: Option<u64>,
    s_poset: Option<RawPoset>,
    r_poset: Option<RawPoset>,
    map: Option<Map<String, Value>>,
    ring: Option<RawRing>,
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub name: Option<String>,
    pub seed: Option<u64>,
    /// Present for ring documents; `map` is then compiled from it.
    pub ring: Option<RingHom>,
    pub map: SpectralMap,
}

impl InstanceDocument {
    pub fn from_map(map: SpectralMap) -> Self {
        InstanceDocument {
            name: None,
            seed: None,
            ring: None,
            map,
        }
    }

    pub fn from_ring(h: RingHom) -> Self {
        InstanceDocument {
            name: None,
            seed: None,
            map: h.to_spectral_map(),
            ring: Some(h),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        if let Some(name) = &self.name {
            out.insert("name".into(), json!(name));
        }
        if let Some(seed) = self.seed {
            out.insert("seed".into(), json!(seed));
        }
        match &self.ring {
            Some(h) => {
                out.insert("ring".into(), json!(h.to_string()));
            }
            None => {
                let m = &self.map;
                out.insert("s_poset".into(), poset_json(m.s()));
                out.insert("r_poset".into(), poset_json(m.r()));
                let assignment: Map<String, Value> = (0..m.r().len())
                    .map(|q| (m.r().label(q).to_string(), json!(m.target_label(q))))
                    .collect();
                out.insert("map".into(), Value::Object(assignment));
            }
        }
        Value::Object(out)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }
}

fn poset_json(p: &Poset) -> Value {
    let order: Vec<Value> = covering_pairs(p)
        .into_iter()
        .map(|(a, b)| json!([p.label(a), p.label(b)]))
        .collect();
    json!({ "labels": p.labels(), "order": order })
}

fn build_poset(raw: &RawPoset) -> Result<Poset, DocumentError> {
    let pairs: Vec<(&str, &str)> = raw.order.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let labels: Vec<&str> = raw.labels.iter().map(String::as_str).collect();
    Ok(spectra::make_poset(&labels, &pairs)?)
}

fn build_map(s: Poset, r: Poset, raw: &Map<String, Value>) -> Result<SpectralMap, DocumentError> {
    let s_index: HashMap<&str, usize> = s.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    for key in raw.keys() {
        if r.index_of(key).is_none() {
            return Err(DocumentError::Semantic(format!("map names unknown r label `{key}`")));
        }
    }
    let mut contraction = Vec::with_capacity(r.len());
    for q in 0..r.len() {
        let label = r.label(q);
        let value = raw
            .get(label)
            .ok_or_else(|| DocumentError::Semantic(format!("map has no value for `{label}`")))?;
        let value = value
            .as_str()
            .ok_or_else(|| DocumentError::Semantic(format!("map value for `{label}` is not a string")))?;
        contraction.push(if value == "TOP" {
            Target::Top
        } else {
            Target::Prime(*s_index.get(value).ok_or_else(|| {
                DocumentError::Semantic(format!("map sends `{label}` to unknown s label `{value}`"))
            })?)
        });
    }
    Ok(SpectralMap::new(Arc::new(s), Arc::new(r), contraction)?)
}

fn build_ring(raw: &RawRing) -> Result<RingHom, DocumentError> {
    match raw {
        RawRing::Text(text) => Ok(parse_hom(text)?),
        RawRing::Fields { m, target, e } => {
            let target = parse_ring(target).map_err(RingError::from)?;
            let e = match e {
                RawUnit::One(x) => vec![*x],
                RawUnit::Many(xs) => xs.clone(),
            };
            Ok(make_hom(*m, target, Element(e))?)
        }
    }
}

/// Parses a JSON document or a bare `hom(...)` expression.
pub fn parse_instance(text: &str) -> Result<InstanceDocument, DocumentError> {
    if text.trim_start().starts_with("hom") {
        return Ok(InstanceDocument::from_ring(parse_hom(text.trim())?));
    }
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let poset_fields = [raw.s_poset.is_some(), raw.r_poset.is_some(), raw.map.is_some()];
    let (ring, map) = match (&raw.ring, poset_fields) {
        (Some(ring), [false, false, false]) => {
            let h = build_ring(ring)?;
            let m = h.to_spectral_map();
            (Some(h), m)
        }
        (None, [true, true, true]) => {
            let s = build_poset(raw.s_poset.as_ref().expect("present"))?;
            let r = build_poset(raw.r_poset.as_ref().expect("present"))?;
            (None, build_map(s, r, raw.map.as_ref().expect("present"))?)
        }
        _ => {
            return Err(DocumentError::Semantic(
                "a document needs either `ring` or all of `s_poset`, `r_poset` and `map`".into(),
            ))
        }
    };
    Ok(InstanceDocument {
        name: raw.name,
        seed: raw.seed,
        ring,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDENTITY: &str = r#"{
        "name": "id",
        "s_poset": { "labels": ["a", "b"], "order": [["a", "b"]] },
        "r_poset": { "labels": ["a", "b"], "order": [["a", "b"]] },
        "map": { "a": "a", "b": "b" }
    }"#;

    #[test]
    fn identity_document() {
        let doc = parse_instance(IDENTITY).unwrap();
        assert_eq!(doc.name.as_deref(), Some("id"));
        assert_eq!(doc.map, SpectralMap::identity(Arc::new(doc.map.s().clone())));
    }

    #[test]
    fn top_below_a_prime_is_rejected() {
        let text = r#"{
            "s_poset": { "labels": ["p"] },
            "r_poset": { "labels": ["q1", "q2"], "order": [["q1", "q2"]] },
            "map": { "q1": "TOP", "q2": "p" }
        }"#;
        match parse_instance(text) {
            Err(DocumentError::Semantic(msg)) => assert!(msg.contains("monotone"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ring_documents() {
        let bare = parse_instance("hom(m=6, target=Zn(2), e=1)").unwrap();
        assert_eq!(bare.map.s().labels(), &["2Z_6", "3Z_6"]);
        let wrapped = parse_instance(r#"{"ring": "hom(m=6, target=Zn(2), e=1)"}"#).unwrap();
        assert_eq!(wrapped, bare);
        let fields = parse_instance(r#"{"ring": {"m": 2, "target": "Product(Zn(2),Zn(2))", "e": [1, 0]}}"#).unwrap();
        assert!(!fields.map.is_unitary());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_instance("{\n  \"name\": \n}") {
            Err(DocumentError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_instance("hom(m=6, target=Zn(2) e=1)"),
            Err(DocumentError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn semantic_errors() {
        let unknown = IDENTITY.replace(r#""b": "b" }"#, r#""b": "z" }"#);
        assert!(matches!(parse_instance(&unknown), Err(DocumentError::Semantic(_))));
        assert!(matches!(parse_instance(r#"{"name": "x"}"#), Err(DocumentError::Semantic(_))));
        assert!(matches!(
            parse_instance("hom(m=3, target=Zn(2), e=1)"),
            Err(DocumentError::Semantic(_))
        ));
    }

    #[test]
    fn canonical_form_round_trips() {
        for text in [IDENTITY, "hom(m=2, target=Product(Zn(2),Zn(2)), e=(1,0))"] {
            let doc = parse_instance(text).unwrap();
            let once = doc.to_json_string();
            let again = parse_instance(&once).unwrap();
            assert_eq!(again, doc);
            assert_eq!(again.to_json_string(), once);
        }
    }
}
