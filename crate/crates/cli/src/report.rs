//! Command results: a human-readable summary, the same data as JSON, and an
//! optional coefficient artifact that `--out` redirects to a file.

use serde_json::{Map, Value};

#[derive(Default)]
pub struct Report {
    pub text: String,
    pub json: Map<String, Value>,
    /// Key and value of the coefficient data.
    pub artifact: Option<(&'static str, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.to_string(), v.into());
    }
}
