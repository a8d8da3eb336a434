//! The algebra-description document: parsing, canonical serialization and
//! the small comma-separated list syntaxes used on the command line.
//!
//! A document is a JSON object with keys `vertices`, `arrows` and
//! `relations`. Outputs of constructions may add `truncated` and
//! `truncation_bound`; dg algebras add `differential`. The serializer always
//! emits keys in that order, one arrow or relation per line, so equal
//! algebras give byte-equal documents.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, QuadraticMonomialAlgebra};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    vertices: Vec<String>,
    arrows: Vec<RawArrow>,
    relations: Vec<(String, String)>,
    #[serde(default)]
    truncated: bool,
    #[serde(default)]
    truncation_bound: Option<usize>,
    #[serde(default)]
    differential: Option<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: String,
    source: String,
    target: String,
    degree: i64,
}

/// A parsed document together with its truncation marker, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub algebra: QuadraticMonomialAlgebra,
    pub truncation_bound: Option<usize>,
}

pub fn parse_algebra(text: &str) -> Result<QuadraticMonomialAlgebra> {
    parse_document(text).map(|d| d.algebra)
}

/// Parses a document, keeping the truncation marker. A `differential` key is
/// accepted and ignored: the underlying graded quiver with relations is
/// returned.
pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let _ = raw.differential;
    let mut q = GradedQuiver::new();
    for v in raw.vertices {
        q.add_vertex(v)?;
    }
    for a in raw.arrows {
        q.add_arrow(a.name, &a.source, &a.target, a.degree)?;
    }
    let mut rels = Vec::with_capacity(raw.relations.len());
    for (a, b) in &raw.relations {
        let ia = q
            .arrow_id(a)
            .ok_or_else(|| Error::UnknownArrow(a.clone()))?;
        let ib = q
            .arrow_id(b)
            .ok_or_else(|| Error::UnknownArrow(b.clone()))?;
        rels.push((ia, ib));
    }
    let algebra = QuadraticMonomialAlgebra::new(q, rels)?;
    let truncation_bound = match (raw.truncated, raw.truncation_bound) {
        (false, None) => None,
        (true, Some(b)) => Some(b),
        (true, None) => {
            return Err(Error::Precondition(
                "`truncated` is set without `truncation_bound`".into(),
            ))
        }
        (false, Some(_)) => {
            return Err(Error::Precondition(
                "`truncation_bound` given for an untruncated document".into(),
            ))
        }
    };
    Ok(Document {
        algebra,
        truncation_bound,
    })
}

// serde_json appends " at line L column C"; we report those separately
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub(crate) fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Writes the opening brace and the three structural keys, without the
/// closing brace, so callers can append further keys.
pub(crate) fn write_structure(out: &mut String, a: &QuadraticMonomialAlgebra) {
    let q = a.quiver();
    out.push_str("{\n  \"vertices\": [");
    let vs: Vec<String> = q.vertex_names().iter().map(|v| json_str(v)).collect();
    out.push_str(&vs.join(", "));
    out.push_str("],\n  \"arrows\": [");
    for (i, arr) in q.arrows().iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&format!(
            "{{\"name\": {}, \"source\": {}, \"target\": {}, \"degree\": {}}}",
            json_str(&arr.name),
            json_str(q.vertex_name(arr.source)),
            json_str(q.vertex_name(arr.target)),
            arr.degree
        ));
    }
    if q.arrow_count() > 0 {
        out.push_str("\n  ");
    }
    out.push_str("],\n  \"relations\": [");
    for (i, (x, y)) in a.relations().iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&format!(
            "[{}, {}]",
            json_str(&q.arrow(*x).name),
            json_str(&q.arrow(*y).name)
        ));
    }
    if !a.relations().is_empty() {
        out.push_str("\n  ");
    }
    out.push(']');
}

pub(crate) fn write_truncation(out: &mut String, bound: Option<usize>) {
    if let Some(b) = bound {
        out.push_str(&format!(
            ",\n  \"truncated\": true,\n  \"truncation_bound\": {b}"
        ));
    }
}

pub fn serialize_algebra(a: &QuadraticMonomialAlgebra) -> String {
    serialize_document(a, None)
}

pub fn serialize_document(a: &QuadraticMonomialAlgebra, truncation_bound: Option<usize>) -> String {
    let mut out = String::new();
    write_structure(&mut out, a);
    write_truncation(&mut out, truncation_bound);
    out.push_str("\n}\n");
    out
}

/// Parses `"2,4"` into vertex names. The empty string is the empty list.
pub fn parse_vertex_list(text: &str) -> Result<Vec<String>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<String> = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::MalformedList(text.to_string()));
        }
        if !out.iter().any(|x| x == item) {
            out.push(item.to_string());
        }
    }
    Ok(out)
}

/// Parses a relation list such as `"α.β,β.δ"` (or `"αβ,βδ"` when the split
/// is unambiguous) against the arrows of `a`. Every pair must be a relation
/// of `a`.
pub fn parse_relation_list(
    a: &QuadraticMonomialAlgebra,
    text: &str,
) -> Result<Vec<(ArrowId, ArrowId)>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let q = a.quiver();
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let splits = |sep: bool| -> Vec<(ArrowId, ArrowId)> {
            item.char_indices()
                .filter(|&(i, c)| i > 0 && (!sep || c == '.'))
                .filter_map(|(i, c)| {
                    let right = if sep {
                        &item[i + c.len_utf8()..]
                    } else {
                        &item[i..]
                    };
                    Some((q.arrow_id(&item[..i])?, q.arrow_id(right)?))
                })
                .collect()
        };
        let mut found = splits(true);
        if found.is_empty() {
            found = splits(false);
        }
        found.dedup();
        let pair = match found.as_slice() {
            [p] => *p,
            _ => return Err(Error::MalformedList(item.to_string())),
        };
        if !a.is_relation(pair.0, pair.1) {
            return Err(Error::Precondition(format!("`{item}` is not a relation")));
        }
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    Ok(out)
}
