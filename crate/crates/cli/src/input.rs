//! Input documents and parameter merging.
//!
//! A document is a flat JSON object. Command-line flags are written into the
//! same map under the document key names, overriding the document, and the
//! result is deserialized into the parameter struct of the command.

use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::CliError;

pub fn load(path: Option<&Path>) -> Result<Map<String, Value>, CliError> {
    let text = match path {
        None => return Ok(Map::new()),
        Some(p) if p == Path::new("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Malformed(format!("stdin: {e}")))?;
            buf
        }
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::Malformed(format!("{}: {e}", p.display())))?
        }
    };
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Malformed("document must be a JSON object".into())),
        Err(e) => Err(CliError::Malformed(format!("document: {e}"))),
    }
}

pub struct Params {
    map: Map<String, Value>,
}

impl Params {
    pub fn new(map: Map<String, Value>) -> Self {
        Params { map }
    }

    pub fn set<T: Serialize>(&mut self, key: &str, value: Option<T>) -> &mut Self {
        if let Some(v) = value {
            let v = serde_json::to_value(v).expect("flag values serialize");
            self.map.insert(key.to_string(), v);
        }
        self
    }

    pub fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        serde_json::from_value(Value::Object(self.map.clone()))
            .map_err(|e| CliError::Malformed(format!("parameters: {e}")))
    }
}

/// Comma-separated integers, e.g. `1,-2,0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntList(pub Vec<i64>);

impl FromStr for IntList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(IntList(Vec::new()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(IntList)
    }
}

/// Rows separated by `;`, entries by `,`, e.g. `0,1;1,0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Matrix(pub Vec<Vec<i64>>);

impl FromStr for Matrix {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(';').map(|row| row.parse::<IntList>().map(|r| r.0)).collect::<Result<_, _>>().map(Matrix)
    }
}
