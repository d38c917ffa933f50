//! JSON forms of complexes, graphs, ideals and colourings.
//!
//! Readers walk a `serde_json::Value` so that every error carries a JSON
//! pointer into the offending document.

use serde_json::{json, Map, Value};

use crate::complex::SimplicialComplex;
use crate::constructions::Colouring;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ideals::MonomialIdeal;

pub const SCHEMA: &str = "1";

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::input(
            "",
            format!("malformed JSON at line {} column {}: {e}", e.line(), e.column()),
        )
    })
}

fn object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::input(ptr, "expected an object"))?;
    if let Some(s) = obj.get("schema") {
        if s.as_str() != Some(SCHEMA) {
            return Err(Error::input(
                format!("{ptr}/schema"),
                format!("unsupported schema {s}, expected \"{SCHEMA}\""),
            ));
        }
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::input(ptr, format!("missing field {key:?}")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], ptr: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str()) && *k != "schema") {
        Some(k) => Err(Error::input(format!("{ptr}/{k}"), format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn string_list(v: &Value, ptr: &str) -> Result<Vec<String>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input(ptr, "expected an array of strings"))?;
    arr.iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::input(format!("{ptr}/{i}"), "expected a string"))
        })
        .collect()
}

fn list_of_lists(v: &Value, ptr: &str) -> Result<Vec<Vec<String>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input(ptr, "expected an array of arrays"))?;
    arr.iter()
        .enumerate()
        .map(|(i, f)| string_list(f, &format!("{ptr}/{i}")))
        .collect()
}

/// `{"vertices": [...], "facets": [[...], ...]}`.
pub fn complex_from_json(v: &Value) -> Result<SimplicialComplex> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["vertices", "facets"], "")?;
    let vertices = string_list(field(obj, "vertices", "")?, "/vertices")?;
    let facets = list_of_lists(field(obj, "facets", "")?, "/facets")?;
    SimplicialComplex::build(&vertices, &facets)
}

pub fn complex_to_json(c: &SimplicialComplex) -> Value {
    json!({
        "schema": SCHEMA,
        "vertices": c.vertices(),
        "facets": c.facet_labels(),
    })
}

/// `{"vertices": [...], "edges": [["a", "b"], ...]}`.
pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["vertices", "edges"], "")?;
    let vertices = string_list(field(obj, "vertices", "")?, "/vertices")?;
    let edges = list_of_lists(field(obj, "edges", "")?, "/edges")?;
    let mut pairs = Vec::with_capacity(edges.len());
    for (i, e) in edges.into_iter().enumerate() {
        match <[String; 2]>::try_from(e) {
            Ok([a, b]) => pairs.push((a, b)),
            Err(_) => return Err(Error::input(format!("/edges/{i}"), "an edge has exactly two endpoints")),
        }
    }
    Graph::build(&vertices, &pairs)
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "schema": SCHEMA,
        "vertices": g.vertices(),
        "edges": g.edge_labels().into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
    })
}

/// Either a compact string `"x^2, x*y, y^2"` or
/// `{"variables": [...], "generators": [{"x": 2}, ...]}`.
pub fn ideal_from_json(v: &Value) -> Result<MonomialIdeal> {
    if let Some(s) = v.as_str() {
        return MonomialIdeal::parse(s, None);
    }
    let obj = object(v, "")?;
    reject_unknown(obj, &["variables", "generators", "rendered"], "")?;
    let variables = string_list(field(obj, "variables", "")?, "/variables")?;
    let gens = field(obj, "generators", "")?;
    if let Some(s) = gens.as_str() {
        return MonomialIdeal::parse(s, Some(variables)).map_err(|e| match e {
            Error::Input { pointer, message } => Error::input(format!("/generators{pointer}"), message),
            other => other,
        });
    }
    let arr = gens
        .as_array()
        .ok_or_else(|| Error::input("/generators", "expected an array of objects or a string"))?;
    let mut labelled = Vec::with_capacity(arr.len());
    for (i, g) in arr.iter().enumerate() {
        let ptr = format!("/generators/{i}");
        let g = g
            .as_object()
            .ok_or_else(|| Error::input(&ptr, "expected an object of exponents"))?;
        let mut term = Vec::with_capacity(g.len());
        for (name, e) in g {
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| Error::input(format!("{ptr}/{name}"), "exponent must be a nonnegative integer"))?;
            term.push((name.clone(), e));
        }
        labelled.push(term);
    }
    MonomialIdeal::from_labelled(variables, &labelled)
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> Value {
    let vars = ideal.variables();
    let gens: Vec<Value> = ideal
        .generators()
        .iter()
        .map(|m| {
            let mut obj = Map::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    obj.insert(vars[i].clone(), json!(e));
                }
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "variables": vars,
        "generators": gens,
        "rendered": ideal.render(),
    })
}

/// `{"parts": [["x1", "x4"], ["x2"], ["x3"]]}`.
pub fn colouring_from_json(v: &Value) -> Result<Colouring> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["parts"], "")?;
    Ok(Colouring::new(list_of_lists(field(obj, "parts", "")?, "/parts")?))
}

/// What kind of object a document holds, judged by its fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Complex,
    Graph,
    Ideal,
    Colouring,
}

pub fn kind_of(v: &Value) -> Result<Kind> {
    if v.is_string() {
        return Ok(Kind::Ideal);
    }
    let obj = object(v, "")?;
    if obj.contains_key("facets") {
        Ok(Kind::Complex)
    } else if obj.contains_key("edges") {
        Ok(Kind::Graph)
    } else if obj.contains_key("generators") {
        Ok(Kind::Ideal)
    } else if obj.contains_key("parts") {
        Ok(Kind::Colouring)
    } else {
        Err(Error::input(
            "",
            "expected a complex (\"facets\"), graph (\"edges\"), ideal (\"generators\") or colouring (\"parts\")",
        ))
    }
}

/// Reads a file's text as JSON; text that is not JSON is taken as a compact
/// ideal string.
pub fn read_document(text: &str) -> Result<Value> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('"') || trimmed.starts_with('[') {
        parse(trimmed)
    } else {
        Ok(Value::String(trimmed.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let v = parse(r#"{"vertices":["a","b","c","d"],"facets":[["a","b","c"],["c","d"],["a","d"],["a"]]}"#).unwrap();
        let c = complex_from_json(&v).unwrap();
        let back = complex_to_json(&c);
        assert_eq!(back["facets"], json!([["a", "d"], ["c", "d"], ["a", "b", "c"]]));
        assert_eq!(complex_from_json(&back).unwrap(), c);
    }

    #[test]
    fn pointered_errors() {
        let v = parse(r#"{"vertices":["a","a"],"facets":[]}"#).unwrap();
        assert_eq!(
            complex_from_json(&v).unwrap_err(),
            Error::input("/vertices/1", "duplicate vertex label \"a\"")
        );
        let v = parse(r#"{"vertices":["a"],"facets":[["a","z"]]}"#).unwrap();
        assert!(matches!(complex_from_json(&v), Err(Error::Input { pointer, .. }) if pointer == "/facets/0/1"));
        let v = parse(r#"{"vertices":["a"],"facets":[[1]]}"#).unwrap();
        assert!(matches!(complex_from_json(&v), Err(Error::Input { pointer, .. }) if pointer == "/facets/0/0"));
        let v = parse(r#"{"schema":"2","vertices":[],"facets":[]}"#).unwrap();
        assert!(matches!(complex_from_json(&v), Err(Error::Input { pointer, .. }) if pointer == "/schema"));
        assert!(parse("{").is_err());
        let v = parse(r#"{"vertices":["a","b"],"edges":[["a"]]}"#).unwrap();
        assert!(matches!(graph_from_json(&v), Err(Error::Input { pointer, .. }) if pointer == "/edges/0"));
    }

    #[test]
    fn ideal_forms() {
        let a = ideal_from_json(&json!("x^2, x*y, y^2")).unwrap();
        let b = ideal_from_json(&json!({"variables":["x","y"],"generators":[{"x":2},{"x":1,"y":1},{"y":2}]})).unwrap();
        assert_eq!(a, b);
        assert_eq!(ideal_from_json(&ideal_to_json(&a)).unwrap(), a);
        assert_eq!(kind_of(&json!("x")).unwrap(), Kind::Ideal);
        assert_eq!(read_document(" x^2 , y \n").unwrap(), json!("x^2 , y"));
    }
}
