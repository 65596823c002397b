//! The scenario file: one JSON document naming algebras, coalgebras, sections, twists and checks.

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::InputError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: Option<String>,
    pub field: String,
    #[serde(default)]
    pub algebras: Vec<Entry>,
    #[serde(default)]
    pub coalgebras: Vec<Entry>,
    #[serde(default)]
    pub sections: Vec<Entry>,
    #[serde(default)]
    pub twists: Vec<Entry>,
    #[serde(default)]
    pub checks: Vec<CheckEntry>,
}

/// A named object built by a preset from its parameters.
#[derive(Debug, Deserialize)]
pub struct Entry {
    pub name: String,
    pub preset: String,
    #[serde(flatten)]
    pub params: Map<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Pass,
    Fail,
    Error,
}

impl Expected {
    pub fn as_str(self) -> &'static str {
        match self {
            Expected::Pass => "pass",
            Expected::Fail => "fail",
            Expected::Error => "error",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub check: String,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default)]
    pub expect: Option<Expected>,
    #[serde(default)]
    pub params: Map<String, Value>,
}

/// (row label, column label, scalar text).
pub type Triplet = (String, String, String);

/// Parses the document, reporting syntax and schema errors with their position.
pub fn parse(source: &str) -> Result<Scenario, InputError> {
    serde_json::from_str(source).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// 1-based line and column of the first occurrence of `needle` as a JSON string literal.
pub fn locate(source: &str, needle: &str) -> (usize, usize) {
    let quoted = serde_json::to_string(needle).unwrap_or_else(|_| format!("\"{needle}\""));
    match source.find(&quoted) {
        Some(offset) => position(source, offset + 1),
        None => (0, 0),
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn position(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[start..].chars().count() + 1)
}

/// Deserializes preset parameters, attributing errors to the entry's position.
pub fn params<T: serde::de::DeserializeOwned>(source: &str, entry: &Entry) -> Result<T, InputError> {
    serde_json::from_value(Value::Object(entry.params.clone())).map_err(|e| {
        let (line, column) = locate(source, &entry.name);
        InputError::Parse {
            line,
            column,
            message: format!("{} `{}`: {}", entry.preset, entry.name, e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("{\n  \"field\": \"rational\",\n  \"checks\": [,]\n}").unwrap_err();
        match err {
            InputError::Parse { line, column, .. } => assert_eq!((line, column), (3, 14)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_top_level_keys_are_rejected() {
        assert!(matches!(parse("{\"field\": \"rational\", \"extra\": 1}"), Err(InputError::Parse { .. })));
    }

    #[test]
    fn locate_finds_string_literals() {
        let src = "{\n  \"a\": \"xyz\"\n}";
        assert_eq!(locate(src, "xyz"), (2, 9));
        assert_eq!(locate(src, "missing"), (0, 0));
    }

    #[test]
    fn entries_keep_preset_parameters() {
        let s = parse(r#"{"field": "rational", "algebras": [{"name": "A", "preset": "cyclic-group", "order": 2}]}"#).unwrap();
        assert_eq!(s.algebras[0].preset, "cyclic-group");
        assert_eq!(s.algebras[0].params["order"], 2);
    }
}
