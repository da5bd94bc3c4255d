use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One entry of an [`InfoRecord`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InfoValue {
    Bool(bool),
    Int(i64),
    Real(f64),
    Ints(Vec<i64>),
    Text(String),
    Map(InfoRecord),
}

/// Problem-defined facts about one artifact, computed once by the problem's
/// info function and read by its evaluators.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InfoRecord(BTreeMap<String, InfoValue>);

impl InfoRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: impl Into<String>, value: InfoValue) -> &mut Self {
        self.0.insert(key.into(), value);
        self
    }

    pub fn with(mut self, key: impl Into<String>, value: InfoValue) -> Self {
        self.insert(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&InfoValue> {
        self.0.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    fn missing(&self, key: &str, kind: &str) -> ! {
        panic!("info record has no {kind} entry `{key}`; keys: {:?}", self.0.keys().collect::<Vec<_>>())
    }

    // The accessors below panic on a missing key: evaluators only read keys
    // that the same problem's info function writes.

    pub fn int(&self, key: &str) -> i64 {
        match self.get(key) {
            Some(InfoValue::Int(v)) => *v,
            _ => self.missing(key, "integer"),
        }
    }

    pub fn real(&self, key: &str) -> f64 {
        match self.get(key) {
            Some(InfoValue::Real(v)) => *v,
            Some(InfoValue::Int(v)) => *v as f64,
            _ => self.missing(key, "real"),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        match self.get(key) {
            Some(InfoValue::Bool(v)) => *v,
            _ => self.missing(key, "boolean"),
        }
    }

    pub fn ints(&self, key: &str) -> &[i64] {
        match self.get(key) {
            Some(InfoValue::Ints(v)) => v,
            _ => self.missing(key, "integer array"),
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.get(key) {
            Some(InfoValue::Text(v)) => v,
            _ => self.missing(key, "text"),
        }
    }

    pub fn map(&self, key: &str) -> &InfoRecord {
        match self.get(key) {
            Some(InfoValue::Map(v)) => v,
            _ => self.missing(key, "map"),
        }
    }
}

impl From<bool> for InfoValue {
    fn from(v: bool) -> Self {
        InfoValue::Bool(v)
    }
}

impl From<i64> for InfoValue {
    fn from(v: i64) -> Self {
        InfoValue::Int(v)
    }
}

impl From<usize> for InfoValue {
    fn from(v: usize) -> Self {
        InfoValue::Int(v as i64)
    }
}

impl From<f64> for InfoValue {
    fn from(v: f64) -> Self {
        InfoValue::Real(v)
    }
}

impl From<Vec<i64>> for InfoValue {
    fn from(v: Vec<i64>) -> Self {
        InfoValue::Ints(v)
    }
}

impl From<String> for InfoValue {
    fn from(v: String) -> Self {
        InfoValue::Text(v)
    }
}

impl From<&str> for InfoValue {
    fn from(v: &str) -> Self {
        InfoValue::Text(v.to_string())
    }
}

impl From<InfoRecord> for InfoValue {
    fn from(v: InfoRecord) -> Self {
        InfoValue::Map(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_as_plain_map() {
        let info = InfoRecord::new()
            .with("diameter", 26i64.into())
            .with("tiles", vec![0, 1].into())
            .with("sub", InfoRecord::new().with("ok", true.into()).into());
        let text = serde_json::to_string(&info).unwrap();
        assert_eq!(text, r#"{"diameter":26,"sub":{"ok":true},"tiles":[0,1]}"#);
        let back: InfoRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, info);
    }

    #[test]
    #[should_panic(expected = "no integer entry `nope`")]
    fn missing_key_panics_with_name() {
        InfoRecord::new().int("nope");
    }
}
